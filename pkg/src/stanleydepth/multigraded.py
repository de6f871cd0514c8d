"""Multigraded posets for general monomial ideals.

``P_{I/J}`` is the set of exponent vectors ``c <= g`` lying above some
generator of ``I`` and above no generator of ``J``. An interval ``[a, b]``
scores ``alpha(b)``, the number of coordinates where ``b`` reaches ``g``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from . import kernels

Point = tuple[int, ...]
GRID_MAX_POINTS = 5000


def leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def alpha(c: Sequence[int], g: Sequence[int]) -> int:
    if not leq(c, g):
        raise ValueError(f"{tuple(c)} is not below {tuple(g)}")
    return sum(1 for x, y in zip(c, g) if x == y)


def default_bound(*gens: Iterable[Sequence[int]]) -> Point:
    vecs = [tuple(v) for gs in gens for v in gs]
    if not vecs:
        raise ValueError("cannot infer g without generators")
    return tuple(max(col) for col in zip(*vecs))


@dataclass(frozen=True)
class GridPoset:
    n: int
    g: Point
    gens_I: tuple[Point, ...]
    gens_J: tuple[Point, ...]
    points: frozenset[Point]

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, c) -> bool:
        return tuple(c) in self.points

    def maximal(self) -> list[Point]:
        pts = sorted(self.points, key=sum, reverse=True)
        keep: list[Point] = []
        for p in pts:
            if not any(leq(p, q) for q in keep):
                keep.append(p)
        return keep


def build_quotient_poset(gens_I: Iterable[Sequence[int]], gens_J: Iterable[Sequence[int]] = (),
                         g: Sequence[int] | None = None) -> GridPoset:
    gi = tuple(tuple(a) for a in gens_I)
    gj = tuple(tuple(b) for b in gens_J)
    if g is None:
        g = default_bound(gi, gj)
    g = tuple(g)
    for v in gi + gj:
        if len(v) != len(g):
            raise ValueError(f"generator {v} has the wrong length")
        if not leq(v, g):
            raise ValueError(f"generator {v} is not below g={g}")
    pts = frozenset(
        c for c in product(*(range(x + 1) for x in g))
        if any(leq(a, c) for a in gi) and not any(leq(b, c) for b in gj))
    return GridPoset(len(g), g, gi, gj, pts)


def quotient_complement(gens_I: Iterable[Sequence[int]], g: Sequence[int]) -> GridPoset:
    """``P_{S/I}``: the points below ``g`` above no generator of ``I``."""
    return build_quotient_poset([(0,) * len(g)], gens_I, g)


@dataclass(frozen=True, order=True)
class GridInterval:
    lower: Point
    upper: Point

    def __post_init__(self):
        if not leq(self.lower, self.upper):
            raise ValueError(f"{self.lower} is not below {self.upper}")

    def members(self):
        return product(*(range(a, b + 1) for a, b in zip(self.lower, self.upper)))

    def __len__(self) -> int:
        out = 1
        for a, b in zip(self.lower, self.upper):
            out *= b - a + 1
        return out

    def __str__(self) -> str:
        return f"[{self.lower},{self.upper}]"


@dataclass(frozen=True)
class GridPartition:
    intervals: tuple[GridInterval, ...]
    g: Point
    trace: tuple[str, ...] = field(default=(), compare=False)

    @property
    def sdepth(self) -> int:
        return min((alpha(iv.upper, self.g) for iv in self.intervals), default=len(self.g))

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)


def validate_grid_partition(p: Iterable[GridInterval], points: Iterable[Point]) -> str | None:
    """``None`` if the intervals partition ``points``, else a description."""
    target = set(map(tuple, points))
    seen = set()
    for iv in p:
        for c in iv.members():
            if c in seen:
                return f"overlap at {c}"
            if c not in target:
                return f"{c} escapes the poset"
            seen.add(c)
    missing = target - seen
    if missing:
        return f"{min(missing)} uncovered"
    return None


@dataclass(frozen=True)
class GridSdepth:
    value: int
    witness: GridPartition
    empty: bool = False


def _grid_decide(poset: GridPoset, k: int, pts: list[Point], index: dict) -> GridPartition | None:
    g = poset.g
    al = [alpha(c, g) for c in pts]
    need = 0
    for i, a in enumerate(al):
        if a < k:
            need |= 1 << i
    tops = [i for i, a in enumerate(al) if a == k]
    cand_masks: list[int] = []
    cand_iv: list[GridInterval] = []
    cover_of: list[list[int]] = [[] for _ in pts]
    for i in range(len(pts)):
        if not need >> i & 1:
            continue
        for t in tops:
            if not leq(pts[i], pts[t]):
                continue
            iv = GridInterval(pts[i], pts[t])
            mask = 0
            for c in iv.members():
                mask |= 1 << index[c]  # the poset is convex
            c_id = len(cand_masks)
            cand_masks.append(mask)
            cand_iv.append(iv)
            m = mask & need
            while m:
                low = m & -m
                cover_of[low.bit_length() - 1].append(c_id)
                m ^= low
    if any(need >> i & 1 and not cover_of[i] for i in range(len(pts))):
        return None
    chosen, _ = kernels.cover_search(need, (1 << len(pts)) - 1, cand_masks, cover_of)
    if chosen is None:
        return None
    used = set()
    ivs = []
    for c in chosen:
        ivs.append(cand_iv[c])
        used.update(cand_iv[c].members())
    ivs += [GridInterval(c, c) for c in pts if c not in used]
    return GridPartition(tuple(ivs), g)


def grid_sdepth(poset: GridPoset) -> GridSdepth:
    """Exact Stanley depth of a grid poset; empty posets get ``n`` (flagged)."""
    if len(poset.points) > GRID_MAX_POINTS:
        raise ValueError(f"{len(poset.points)} points exceed the guard of {GRID_MAX_POINTS}")
    if not poset.points:
        return GridSdepth(poset.n, GridPartition((), poset.g), empty=True)
    pts = sorted(poset.points, key=lambda c: (sum(c), c))
    index = {c: i for i, c in enumerate(pts)}
    ub = min(alpha(m, poset.g) for m in poset.maximal())
    best = GridPartition(tuple(GridInterval(c, c) for c in pts), poset.g)
    value = best.sdepth
    for k in range(value + 1, ub + 1):
        w = _grid_decide(poset, k, pts, index)
        if w is None:
            break
        best, value = w, k
    return GridSdepth(value, best)


# -- constructive partition for three variables ----------------------------

def _set(v: Sequence[int], i: int, x: int) -> Point:
    out = list(v)
    out[i] = x
    return tuple(out)


class _N3Builder:
    def __init__(self, g: Point):
        self.g = g
        self.intervals: list[GridInterval] = []
        self.trace: list[str] = []

    def a(self, c: Point) -> int:
        return alpha(c, self.g)

    def emit(self, lo: Point, hi: Point, why: str) -> None:
        self.intervals.append(GridInterval(lo, hi))
        self.trace.append(f"{why}: [{lo},{hi}]")

    def columns(self, lo: Point, M: list[Point], why: str) -> None:
        g = self.g
        for i in range(lo[0], g[0] + 1):
            for j in range(lo[1], g[1] + 1):
                for z in range(lo[2], g[2] + 1):
                    if not any(leq((i, j, z), m) for m in M):
                        self.emit((i, j, z), (i, j, g[2]), why)
                        break

    def run(self, lo: Point, M: list[Point]) -> None:
        g = self.g
        if not M:
            self.emit(lo, g, "no quotient elements left")
            return
        alphas = [self.a(m) for m in M]
        aM = min(alphas)
        if len(M) == 1:
            b = M[0]
            if aM == 0:
                self.columns(lo, M, "base alpha=0 column")
                return
            if aM == 1:
                p = next(i for i in range(3) if b[i] == g[i])
                q, r = [i for i in range(3) if i != p]
                if b[r] > b[q]:
                    q, r = r, q
                self.trace.append(f"base alpha=1 perm (1,2,3)<-({p + 1},{q + 1},{r + 1})")
                self.emit(_set(lo, q, b[q] + 1), _set(g, r, b[r]), "I_1")
                self.emit(_set(lo, r, b[r] + 1), g, "I_2")
                return
        if aM == 2:
            c = list(lo)
            for i in range(3):
                z = [m for m in M if m[i] != g[i]]
                if z:
                    c[i] = z[0][i] + 1
            self.emit(tuple(c), g, "alpha(M)=2 single interval")
            return
        two = [m for m, am in zip(M, alphas) if am == 2]
        if two:
            b = two[0]
            d = next(i for i in range(3) if b[i] != g[i])
            self.trace.append(f"drop {b}: quotient interval [{lo},{b}], shift coordinate {d + 1}")
            self.run(_set(lo, d, b[d] + 1), [m for m in M if m != b])
            return
        if aM == 0:
            self.columns(lo, M, "alpha(M)=0 column")
            return

        # every element of M has exactly one coordinate at g
        def gamma(b: Point) -> int:
            return max(b[i] for i in range(3) if b[i] != g[i])

        b0 = max(M, key=lambda b: (gamma(b), tuple(-x for x in b)))
        p = next(i for i in range(3) if b0[i] == g[i])
        q, r = [i for i in range(3) if i != p]
        if b0[r] > b0[q]:
            q, r = r, q
        side = [b[p] for b in M if b[p] != g[p] and b[q] == g[q]]
        c1 = 1 + max(side) if side else lo[p]
        c2 = b0[q] + 1
        c3 = min(b[r] for b in M)
        s = [0, 0, 0]
        t = [0, 0, 0]
        s[p], s[q], s[r] = c1, c2, lo[r]
        t[p], t[q], t[r] = g[p], g[q], c3
        self.trace.append(f"perm (1,2,3)<-({p + 1},{q + 1},{r + 1}) b0={b0}")
        self.emit(tuple(s), tuple(t), "J")
        self.run(_set(lo, r, c3 + 1), [b for b in M if b[r] > c3])


def n3_construct(gens_I: Iterable[Sequence[int]], g: Sequence[int] | None = None) -> GridPartition:
    """Partition of ``P_I`` (three variables) beating every quotient maximal element.

    Follows the inductive construction: peel off maximal quotient elements
    that agree with ``g`` in two coordinates, use columns when some maximal
    element agrees in none, and otherwise carve out one interval topped at
    two coordinates of ``g`` and recurse on the slab above it.
    """
    gens = [tuple(a) for a in gens_I]
    if not gens:
        raise ValueError("I needs at least one generator")
    if g is None:
        g = default_bound(gens)
    g = tuple(g)
    if len(g) != 3:
        raise ValueError("n3_construct is for three variables")
    quotient = quotient_complement(gens, g)
    M = sorted(GridPoset(3, g, (), (), quotient.points).maximal())
    b = _N3Builder(g)
    b.trace.append(f"M={M}")
    b.run((0, 0, 0), M)
    return GridPartition(tuple(b.intervals), g, tuple(b.trace))
