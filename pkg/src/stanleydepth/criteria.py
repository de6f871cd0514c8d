"""Counting criteria for interval partitions with large tops.

The combinatorial criterion asks whether a family has enough ``j``-sets for
every ``i``-set (``i < k``) to sit at the bottom of an interval whose top is a
``k``-set. The strong form applies the same count to the link of every face.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .lattice import Antichain, down_closure, f_vector, format_set, popcount, set_key


@dataclass(frozen=True)
class CriterionResult:
    passed: bool
    # residual vector after each absorption round (round i zeroes entry i)
    trace: tuple[tuple[int, ...], ...]
    fail_index: int | None = None

    @property
    def residual(self) -> tuple[int, ...]:
        return self.trace[-1] if self.trace else ()

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class SccResult:
    passed: bool
    witness: int | None = None
    witness_result: CriterionResult | None = None
    k: int = 0

    def __bool__(self) -> bool:
        return self.passed


def combinatorial_criterion(f: Sequence[int], k: int) -> CriterionResult:
    """Simulate covering every set of size < k by an interval topped at size k.

    Round ``i`` turns each of the ``a_i`` remaining ``i``-sets into the bottom
    of an interval, consuming ``a_i * C(k-i, j-i)`` sets of each size ``j``.
    """
    if k < 0 or k >= len(f):
        raise ValueError(f"f-vector of length {len(f)} does not reach index {k}")
    a = list(f[:k + 1])
    trace = []
    for i in range(k + 1):
        ai = a[i]
        for j in range(i, k + 1):
            a[j] -= ai * comb(k - i, j - i)
        trace.append(tuple(a))
        for j in range(i, k + 1):
            if a[j] < 0:
                return CriterionResult(False, tuple(trace), j)
    return CriterionResult(True, tuple(trace))


def h_vector(f: Sequence[int], d: int) -> tuple[int, ...]:
    """h-vector of a pure (d-1)-dimensional complex from its f-vector."""
    a = list(f) + [0] * (d + 1 - len(f))
    return tuple(
        sum((-1) ** (j - i) * comb(d - i, j - i) * a[i] for i in range(j + 1))
        for j in range(d + 1))


def link(facets: Antichain, face: int) -> Antichain:
    """Link of ``face``, relabelled order-preservingly onto ``[n - |face|]``."""
    if not any(face & m == face for m in facets.masks):
        raise ValueError(f"{format_set(face)} is not a face")
    keep = [v for v in range(facets.n) if not face >> v & 1]
    pos = {v: i for i, v in enumerate(keep)}
    out = []
    for m in facets.masks:
        if m & face != face:
            continue
        r = 0
        for v in keep:
            if m >> v & 1:
                r |= 1 << pos[v]
        out.append(r)
    return Antichain(out, len(keep), check=False)


def strong_cc(facets: Antichain, k: int | None = None) -> SccResult:
    """Plain criterion on the link of every face, ``∅`` included.

    ``k`` defaults to the smallest facet size. The witness is the first
    failing face in canonical order.
    """
    if not facets.masks:
        return SccResult(True, k=0 if k is None else k)
    if k is None:
        k = facets.min_size()
    for a in sorted(down_closure(facets).masks, key=set_key):
        r = k - popcount(a)
        if r < 0:
            continue
        lk = link(facets, a)
        res = combinatorial_criterion(f_vector(down_closure(lk), r), r)
        if not res.passed:
            return SccResult(False, a, res, k)
    return SccResult(True, k=k)


def criterion_holds(counts: Sequence[int], k: int) -> bool:
    """Fast pass/fail form of :func:`combinatorial_criterion` (no trace)."""
    a = list(counts[:k + 1])
    for i in range(k + 1):
        ai = a[i]
        if ai < 0:
            return False
        if ai:
            for j in range(i + 1, k + 1):
                a[j] -= ai * comb(k - i, j - i)
                if a[j] < 0:
                    return False
    return True
