"""Reductions that shrink a potential counterexample, and the split test.

A counterexample to ``sdepth I > sdepth S/I`` can be assumed pure, spanning
and without a common vertex; an antichain that splits over some vertex can
be skipped altogether.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .criteria import strong_cc
from .lattice import Antichain, down_closure, format_set, popcount
from .solver import sdepth

SPLIT_MODES = ("exact", "criterion")


@dataclass(frozen=True)
class ReductionReport:
    bad_degree: bool
    uncovered_vertex: int | None  # 1-based
    common_vertex: int | None
    pure: bool
    k: int


def bad_degree(facets: Antichain) -> ReductionReport:
    """Does some vertex lie in no facet or in every facet?"""
    if not facets.masks:
        raise ValueError("bad_degree needs a nonempty antichain")
    full = (1 << facets.n) - 1
    missing = full & ~facets.union()
    common = facets.intersection()
    low = lambda m: (m & -m).bit_length() if m else None  # noqa: E731
    return ReductionReport(bool(missing or common), low(missing), low(common),
                           facets.is_pure(), facets.min_size())


def purify(facets: Antichain, k: int | None = None) -> Antichain:
    """All ``k``-subsets of facets; ``k`` defaults to ``sdepth(D[facets])``."""
    if k is None:
        k = sdepth(down_closure(facets)).value
    if k > facets.min_size():
        raise ValueError(f"k={k} exceeds the smallest facet size {facets.min_size()}")
    out = set()
    for m in facets.masks:
        bits = [1 << v for v in range(facets.n) if m >> v & 1]
        out.update(sum(c) for c in combinations(bits, k))
    return Antichain(out, facets.n, check=False)


def _drop_vertices(facets: Antichain, drop: int) -> Antichain:
    keep = [v for v in range(facets.n) if not drop >> v & 1]
    out = []
    for m in facets.masks:
        r = 0
        for i, v in enumerate(keep):
            if m >> v & 1:
                r |= 1 << i
        out.append(r)
    return Antichain(out, len(keep), check=False)


def delete_common_vertex(facets: Antichain, x: int) -> Antichain:
    """Remove vertex ``x`` (1-based) from every facet and close up the labels."""
    bit = 1 << (x - 1)
    if not facets.masks or any(not m & bit for m in facets.masks):
        raise ValueError(f"vertex {x} is not in every facet")
    return _drop_vertices(facets, bit)


def restrict_support(facets: Antichain) -> Antichain:
    """Drop the vertices that lie in no facet."""
    full = (1 << facets.n) - 1
    return _drop_vertices(facets, full & ~facets.union())


def cone(facets: Antichain) -> Antichain:
    """Add a new vertex ``n + 1`` to every facet."""
    top = 1 << facets.n
    return Antichain([m | top for m in facets.masks], facets.n + 1, check=False)


def corollary_n1(facets: Antichain) -> bool:
    """All facets have size ``n - 1``, so the strict inequality holds outright."""
    return bool(facets.masks) and all(popcount(m) == facets.n - 1 for m in facets.masks)


@dataclass
class DownDepthCache:
    """Stanley depths of down sets keyed by an isomorphism-invariant key.

    Depth of a down set does not depend on the ground set, so uniform
    antichains are keyed by the canonical form of their support.
    """

    values: dict = field(default_factory=dict)
    hits: int = 0

    def key(self, facets: Antichain):
        from .enumeration import canonical_form

        red = restrict_support(facets)
        if red.is_pure() and red.n <= 8:
            return ("u", canonical_form(red))
        return ("raw", red)

    def get(self, facets: Antichain) -> int:
        if not facets.masks:
            raise ValueError("empty down set")
        key = self.key(facets)
        v = self.values.get(key)
        if v is None:
            v = sdepth(down_closure(facets)).value
            self.values.setdefault(key, v)
        else:
            self.hits += 1
        return v


_default_cache = DownDepthCache()


def split_condition_i(facets: Antichain, x: int) -> bool:
    bit = 1 << (x - 1)
    rest = [m for m in facets.masks if not m & bit]
    return all(any(m & ~bit & ~t == 0 for t in rest)
               for m in facets.masks if m & bit)


def splits_over(facets: Antichain, x: int, mode: str = "exact",
                cache: DownDepthCache | None = None) -> bool:
    """Split test for vertex ``x``.

    ``mode="exact"`` compares the two down-set depths exactly.
    ``mode="criterion"`` replaces that comparison by the strong criterion on
    ``D[A - A_x]`` at the smallest facet size.
    """
    if mode not in SPLIT_MODES:
        raise ValueError(f"unknown split mode {mode!r}")
    if not facets.masks:
        raise ValueError("splits_over needs a nonempty antichain")
    bit = 1 << (x - 1)
    with_x = [m for m in facets.masks if m & bit]
    if not with_x:
        return True
    if not split_condition_i(facets, x):
        return False
    rest = Antichain([m for m in facets.masks if not m & bit], facets.n, check=False)
    if mode == "criterion":
        return strong_cc(rest, facets.min_size()).passed
    cache = _default_cache if cache is None else cache
    return cache.get(rest) >= cache.get(facets)


def splits(facets: Antichain, mode: str = "exact",
           cache: DownDepthCache | None = None) -> int | None:
    """Smallest vertex the antichain splits over, or ``None``."""
    for x in range(1, facets.n + 1):
        if splits_over(facets, x, mode, cache):
            return x
    return None


@dataclass(frozen=True)
class ReduceStep:
    op: str
    detail: str
    result: Antichain


def reduce_to_fixpoint(facets: Antichain, k: int | None = None) -> list[ReduceStep]:
    """Apply support restriction, common-vertex deletion and purification.

    Each step is recorded; the last entry's ``result`` is the reduced antichain.
    """
    steps = [ReduceStep("input", "", facets)]
    cur = facets
    while True:
        if not cur.masks:
            break
        red = restrict_support(cur)
        if red.n != cur.n:
            steps.append(ReduceStep("restrict_support",
                                    f"dropped {format_set((1 << cur.n) - 1 & ~cur.union())}", red))
            cur = red
            continue
        common = cur.intersection()
        if common:
            x = (common & -common).bit_length()
            cur = delete_common_vertex(cur, x)
            steps.append(ReduceStep("delete_common_vertex", f"x={x}", cur))
            continue
        kk = sdepth(down_closure(cur)).value if k is None else k
        if kk < cur.min_size() or not cur.is_pure():
            cur = purify(cur, kk)
            steps.append(ReduceStep("purify", f"k={kk}", cur))
            k = None
            continue
        break
    return steps
