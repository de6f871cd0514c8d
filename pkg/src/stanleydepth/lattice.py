"""Subset-lattice primitives.

Subsets of the ground set ``[n] = {1, ..., n}`` are plain integer bitmasks:
vertex ``v`` lives at bit ``v - 1``. :class:`VertexSet` wraps a mask when a
value needs to carry its ground set around (parsing, printing, reports), but
every hot path works on raw ints.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import comb
from typing import Iterable, Iterator, Sequence

MAX_N = 16


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def vertices(mask: int) -> list[int]:
    """1-based vertices of ``mask`` in increasing order."""
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def mask_of(verts: Iterable[int]) -> int:
    m = 0
    for v in verts:
        m |= 1 << (v - 1)
    return m


def set_key(mask: int) -> tuple[int, int]:
    """Canonical member order: cardinality first, then numeric value."""
    return (popcount(mask), mask)


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def format_set(mask: int, compact: bool = False) -> str:
    if mask == 0:
        return "{}"
    vs = vertices(mask)
    if compact:
        return "".join(str(v) for v in vs)
    return ",".join(str(v) for v in vs)


@dataclass(frozen=True, order=True)
class VertexSet:
    """A subset of ``[n]`` stored as a bitmask."""

    bits: int
    n: int

    def __post_init__(self):
        if not 0 <= self.n <= MAX_N:
            raise ValueError(f"ground set size {self.n} outside 0..{MAX_N}")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bits {self.bits:#x} exceed ground set [{self.n}]")

    @classmethod
    def of(cls, verts: Iterable[int], n: int) -> "VertexSet":
        return cls(mask_of(verts), n)

    def cardinality(self) -> int:
        return popcount(self.bits)

    def __len__(self) -> int:
        return popcount(self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter(vertices(self.bits))

    def __contains__(self, v: int) -> bool:
        return bool(self.bits >> (v - 1) & 1)

    def issubset(self, other: "VertexSet") -> bool:
        return self.bits & ~other.bits == 0

    def __str__(self) -> str:
        return format_set(self.bits, compact=self.n <= 9)


class AntichainError(ValueError):
    pass


@dataclass(frozen=True)
class Antichain:
    """Pairwise incomparable subsets of ``[n]``, kept in canonical order.

    ``masks`` is sorted by (cardinality, value) so that equality and hashing
    are structural.
    """

    masks: tuple[int, ...]
    n: int

    def __init__(self, masks: Iterable[int], n: int, check: bool = True):
        ms = tuple(sorted(set(masks), key=set_key))
        if check:
            if not 0 <= n <= MAX_N:
                raise AntichainError(f"ground set size {n} outside 0..{MAX_N}")
            full = (1 << n) - 1
            for m in ms:
                if m & ~full:
                    raise AntichainError(f"set {format_set(m)} not inside [{n}]")
            for i, a in enumerate(ms):
                for b in ms[i + 1:]:
                    if a & b == a:
                        raise AntichainError(
                            f"comparable pair {format_set(a)} < {format_set(b)}")
        object.__setattr__(self, "masks", ms)
        object.__setattr__(self, "n", n)

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[int]], n: int | None = None) -> "Antichain":
        ms = [mask_of(s) for s in sets]
        if n is None:
            n = max((m.bit_length() for m in ms), default=0)
        return cls(ms, n)

    @classmethod
    def maximal(cls, masks: Iterable[int], n: int) -> "Antichain":
        """Antichain of the inclusion-maximal members of ``masks``."""
        ms = sorted(set(masks), key=set_key, reverse=True)
        keep: list[int] = []
        for m in ms:
            if not any(m & k == m for k in keep):
                keep.append(m)
        return cls(keep, n, check=False)

    @property
    def members(self) -> tuple[VertexSet, ...]:
        return tuple(VertexSet(m, self.n) for m in self.masks)

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[int]:
        return iter(self.masks)

    def sizes(self) -> list[int]:
        return [popcount(m) for m in self.masks]

    def is_pure(self) -> bool:
        return len(set(self.sizes())) <= 1

    def min_size(self) -> int:
        return min(self.sizes())

    def union(self) -> int:
        u = 0
        for m in self.masks:
            u |= m
        return u

    def intersection(self) -> int:
        if not self.masks:
            return 0
        x = (1 << self.n) - 1
        for m in self.masks:
            x &= m
        return x

    def relabel(self, perm: Sequence[int], n: int | None = None) -> "Antichain":
        """Apply ``perm`` (0-based: old bit i -> new bit perm[i])."""
        out = []
        for m in self.masks:
            r = 0
            i = 0
            while m:
                if m & 1:
                    r |= 1 << perm[i]
                m >>= 1
                i += 1
            out.append(r)
        return Antichain(out, self.n if n is None else n, check=False)

    def format(self, compact: bool = False) -> str:
        return " ".join(format_set(m, compact) for m in self.masks)

    def __str__(self) -> str:
        return self.format(compact=self.n <= 9)


class Role(Enum):
    DOWN = "down-set"
    UP = "up-set"
    GENERAL = "general"


@dataclass(frozen=True)
class SetFamily:
    masks: frozenset[int]
    n: int
    role: Role = Role.GENERAL

    def __len__(self) -> int:
        return len(self.masks)

    def __contains__(self, m: int) -> bool:
        return m in self.masks

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.masks, key=set_key))

    def maximal(self) -> Antichain:
        return Antichain.maximal(self.masks, self.n)

    def minimal(self) -> list[int]:
        ms = sorted(self.masks, key=set_key)
        keep: list[int] = []
        for m in ms:
            if not any(k & m == k for k in keep):
                keep.append(m)
        return keep


def boolean_lattice(n: int) -> SetFamily:
    return SetFamily(frozenset(range(1 << n)), n, Role.DOWN)


def down_closure(facets: Antichain) -> SetFamily:
    out: set[int] = set()
    for m in facets.masks:
        if m in out:
            continue
        out.update(submasks(m))
    return SetFamily(frozenset(out), facets.n, Role.DOWN)


def complement_upset(facets: Antichain) -> SetFamily:
    down = down_closure(facets).masks
    return SetFamily(frozenset(m for m in range(1 << facets.n) if m not in down),
                     facets.n, Role.UP)


def f_vector(family: SetFamily | Iterable[int], top: int) -> tuple[int, ...]:
    counts = [0] * (top + 1)
    masks = family.masks if isinstance(family, SetFamily) else family
    for m in masks:
        c = popcount(m)
        if c <= top:
            counts[c] += 1
    return tuple(counts)


@dataclass(frozen=True, order=True)
class Interval:
    lower: int
    upper: int

    def __post_init__(self):
        if self.lower & ~self.upper:
            raise ValueError(
                f"lower {format_set(self.lower)} not inside upper {format_set(self.upper)}")

    def __len__(self) -> int:
        return 1 << popcount(self.upper & ~self.lower)

    def __contains__(self, m: int) -> bool:
        return self.lower & ~m == 0 and m & ~self.upper == 0

    def members(self) -> Iterator[int]:
        free = self.upper & ~self.lower
        for s in submasks(free):
            yield self.lower | s

    @property
    def top_size(self) -> int:
        return popcount(self.upper)

    def __str__(self) -> str:
        return f"[{format_set(self.lower, True)},{format_set(self.upper, True)}]"


@dataclass(frozen=True)
class IntervalPartition:
    intervals: tuple[Interval, ...]
    n: int

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.intervals)

    @property
    def sdepth(self) -> int:
        """Smallest top size; the empty partition reports ``n`` by convention."""
        return min((iv.top_size for iv in self.intervals), default=self.n)

    def covered(self) -> int:
        return sum(len(iv) for iv in self.intervals)

    def __str__(self) -> str:
        return " ".join(str(iv) for iv in self.intervals)


@dataclass(frozen=True)
class Violation:
    """Why an interval partition fails to partition a family.

    ``kind`` is one of ``"overlap"``, ``"escapes"``, ``"uncovered"``.
    """

    kind: str
    sets: tuple[int, ...] = field(default=())

    def __str__(self) -> str:
        return f"{self.kind}: " + " ".join(format_set(s) for s in self.sets)


def validate_partition(p: IntervalPartition | Iterable[Interval],
                       family: SetFamily | Iterable[int]) -> Violation | None:
    """Return ``None`` when ``p`` partitions ``family``, else the first violation."""
    target = family.masks if isinstance(family, SetFamily) else frozenset(family)
    seen: set[int] = set()
    for iv in p:
        for m in iv.members():
            if m in seen:
                return Violation("overlap", (m,))
            if m not in target:
                return Violation("escapes", (m,))
            seen.add(m)
    missing = sorted(target - seen, key=set_key)
    if missing:
        return Violation("uncovered", (missing[0],))
    return None


def singleton_partition(n: int) -> IntervalPartition:
    """Partition of ``2^[n]`` minus the empty set whose lower bounds are singletons.

    Interval ``[{k}, [k]]`` for k = n, ..., 1.
    """
    if n < 1:
        raise ValueError("the poset 2^[0] - {} is empty")
    return IntervalPartition(
        tuple(Interval(1 << (k - 1), (1 << k) - 1) for k in range(n, 0, -1)), n)


def binomial_row(n: int) -> list[int]:
    return [comb(n, i) for i in range(n + 1)]
