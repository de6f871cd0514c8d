"""Uniform hypergraphs up to isomorphism and the census pipeline.

A k-uniform edge set on ``[n]`` is encoded as an int over the ``C(n, k)``
possible edges, edge ``i`` of the canonical edge list sitting at bit
``C(n, k) - 1 - i``. With that layout a larger mask is a lexicographically
smaller member list, so the canonical form of a hypergraph is the largest
mask in its orbit under the ``n!`` vertex permutations.
"""
from __future__ import annotations

import json
import logging
import time
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Iterable, Iterator

from . import kernels
from .criteria import strong_cc
from .lattice import Antichain, complement_upset, down_closure, set_key
from .reductions import DownDepthCache, bad_degree, splits
from .solver import decide_sdepth_at_least, sdepth

log = logging.getLogger(__name__)

MAX_CANON_N = 8
EXHAUSTIVE_MAX_EDGES = 22

BAD_DEGREE = "BadDegree"
FAIL_SCC = "FailSCC"
SPLITS = "Splits"
SDEPTH_OK = "SdepthOK"
COUNTEREXAMPLE = "COUNTEREXAMPLE"
CATEGORIES = (BAD_DEGREE, FAIL_SCC, SPLITS, SDEPTH_OK, COUNTEREXAMPLE)


class ScaleError(ValueError):
    pass


@dataclass(frozen=True)
class EdgeSpace:
    n: int
    k: int
    edges: tuple[int, ...]
    index: dict
    images: tuple[tuple[int, ...], ...]

    @property
    def width(self) -> int:
        return len(self.edges)

    def to_antichain(self, mask: int) -> Antichain:
        m = self.width
        return Antichain([self.edges[m - 1 - i] for i in range(m) if mask >> i & 1],
                         self.n, check=False)

    def to_mask(self, facets: Antichain) -> int:
        m = self.width
        out = 0
        for e in facets.masks:
            out |= 1 << (m - 1 - self.index[e])
        return out


def _perm_order(n: int) -> list[tuple[int, ...]]:
    """All non-identity permutations, transpositions first."""
    ident = tuple(range(n))
    trans = []
    for a, b in combinations(range(n), 2):
        p = list(ident)
        p[a], p[b] = b, a
        trans.append(tuple(p))
    seen = set(trans) | {ident}
    return trans + [p for p in permutations(range(n)) if p not in seen]


@lru_cache(maxsize=None)
def edge_space(n: int, k: int) -> EdgeSpace:
    if n > MAX_CANON_N:
        raise ValueError(f"canonical forms limited to n <= {MAX_CANON_N}")
    edges = tuple(sorted((sum(1 << v for v in c) for c in combinations(range(n), k)),
                         key=set_key))
    images = kernels.edge_images(edges, _perm_order(n))
    return EdgeSpace(n, k, edges, {e: i for i, e in enumerate(edges)},
                     tuple(tuple(r) for r in images))


def _relabel_list(masks: Iterable[int], perm) -> tuple[int, ...]:
    out = []
    for m in masks:
        r = 0
        v = 0
        while m:
            if m & 1:
                r |= 1 << perm[v]
            m >>= 1
            v += 1
        out.append(r)
    return tuple(sorted(out, key=set_key))


def canonical_form_bruteforce(facets: Antichain) -> Antichain:
    """Lexicographically least canonically ordered member list over all relabelings."""
    if facets.n > MAX_CANON_N:
        raise ValueError(f"canonical forms limited to n <= {MAX_CANON_N}")
    best = min((_relabel_list(facets.masks, p) for p in permutations(range(facets.n))),
               key=lambda t: [set_key(m) for m in t])
    return Antichain(best, facets.n, check=False)


def canonical_form(facets: Antichain) -> Antichain:
    if facets.n > MAX_CANON_N:
        raise ValueError(f"canonical forms limited to n <= {MAX_CANON_N}")
    if not facets.masks or not facets.is_pure():
        return canonical_form_bruteforce(facets)
    space = edge_space(facets.n, facets.min_size())
    return space.to_antichain(kernels.canonical_mask(space.to_mask(facets), space.images))


def enumerate_exhaustive(n: int, k: int, include_empty: bool = False) -> list[int]:
    """Canonical masks of all k-uniform hypergraphs by filtering every edge set."""
    space = edge_space(n, k)
    lo = 0 if include_empty else 1
    if not space.images:  # n <= 1: the identity is the whole group
        return list(range(lo, 1 << space.width))
    return kernels.canonical_filter(lo, 1 << space.width, space.images)


def _augment_children(space: EdgeSpace, parent: int) -> Iterator[int]:
    """Canonical children whose canonical parent is ``parent``.

    The canonical parent of a canonical mask is the canonical form of the
    mask with its lowest edge bit (last member of the list) removed.
    """
    seen = set()
    images = space.images
    for i in range(space.width):
        if parent >> i & 1:
            continue
        child = kernels.canonical_mask(parent | 1 << i, images)
        if child in seen:
            continue
        seen.add(child)
        low = child & -child
        if kernels.canonical_mask(child ^ low, images) == parent:
            yield child


def enumerate_augment(n: int, k: int, include_empty: bool = False) -> Iterator[int]:
    """Canonical masks grown one edge at a time, each class produced once."""
    space = edge_space(n, k)
    if include_empty:
        yield 0
    stack = [0]
    while stack:
        parent = stack.pop()
        for child in _augment_children(space, parent):
            yield child
            stack.append(child)


def enumerate_hypergraphs(n: int, k: int, include_empty: bool = False,
                          strategy: str | None = None) -> list[Antichain]:
    """Every k-uniform hypergraph on ``[n]`` up to isomorphism, as canonical antichains.

    ``strategy`` is ``"exhaustive"`` or ``"augment"``; by default the
    exhaustive filter is used when ``C(n, k) <= 22``.
    """
    space = edge_space(n, k)
    return [space.to_antichain(m) for m in enumerate_masks(n, k, include_empty, strategy)]


def enumerate_masks(n: int, k: int, include_empty: bool = False,
                    strategy: str | None = None) -> list[int]:
    """Sorted canonical edge-set masks; see :func:`enumerate_hypergraphs`."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    if strategy is None:
        strategy = "exhaustive" if comb(n, k) <= EXHAUSTIVE_MAX_EDGES else "augment"
    if strategy == "exhaustive":
        return enumerate_exhaustive(n, k, include_empty)
    if strategy == "augment":
        return sorted(enumerate_augment(n, k, include_empty))
    raise ValueError(f"unknown strategy {strategy!r}")


@dataclass(frozen=True)
class ClassificationRecord:
    canon: Antichain
    n: int
    k: int
    category: str
    split_vertex: int | None = None
    witness: tuple | None = None  # intervals (lower, upper) of an sdepth >= k+1 partition
    seconds: float = 0.0

    def to_json(self) -> dict:
        d = {"n": self.n, "k": self.k, "facets": self.canon.format(),
             "category": self.category}
        if self.split_vertex is not None:
            d["split_vertex"] = self.split_vertex
        if self.witness is not None:
            d["witness"] = [[lo, hi] for lo, hi in self.witness]
        return d


def classify(facets: Antichain, k: int | None = None, split_mode: str = "exact",
             cache: DownDepthCache | None = None) -> ClassificationRecord:
    """Sequential filters: bad degree, strong criterion, split, then solve.

    Only the first filter that fires counts. Instances that survive all
    three filters are decided at depth ``k + 1`` on the ideal side; a
    failure there is a counterexample.
    """
    t0 = time.perf_counter()
    if k is None:
        k = facets.min_size() if facets.masks else 0
    n = facets.n

    def rec(cat, **kw):
        return ClassificationRecord(facets, n, k, cat, seconds=time.perf_counter() - t0, **kw)

    if not facets.masks or bad_degree(facets).bad_degree:
        return rec(BAD_DEGREE)
    if not strong_cc(facets, k).passed:
        return rec(FAIL_SCC)
    x = splits(facets, split_mode, cache)
    if x is not None:
        return rec(SPLITS, split_vertex=x)
    w = decide_sdepth_at_least(complement_upset(facets), k + 1)
    if w is None:
        return rec(COUNTEREXAMPLE)
    return rec(SDEPTH_OK, witness=tuple((iv.lower, iv.upper) for iv in w if iv.lower != iv.upper))


# (n, k) pairs that run by default; the rest need the long-running flag
def check_scale(n: int, k: int, long_running: bool = False) -> None:
    if not 1 <= k <= n:
        raise ScaleError(f"need 1 <= k <= n, got n={n} k={k}")
    if n <= 6 or (n == 7 and k in (1, 2, 5, 6, 7)):
        return
    if n == 7 and long_running:
        return
    raise ScaleError(f"census n={n} k={k} is long-running; pass the long-running flag"
                     if n == 7 else f"census n={n} is beyond desk scale")


@dataclass
class CensusReport:
    n: int
    k: int
    counts: Counter = field(default_factory=Counter)
    split_mode: str = "exact"
    include_empty: bool = False
    seconds: float = 0.0

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def merge(self, other: "CensusReport") -> "CensusReport":
        self.counts.update(other.counts)
        self.seconds += other.seconds
        return self

    def row(self) -> dict:
        return {"Total": self.total, **{c: self.counts.get(c, 0) for c in CATEGORIES}}

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "split_mode": self.split_mode,
                "include_empty": self.include_empty, **self.row()}


def _classify_chunk(args) -> tuple[Counter, list[ClassificationRecord] | None]:
    n, k, masks, split_mode, keep = args
    space = edge_space(n, k)
    cache = DownDepthCache()
    counts: Counter = Counter()
    recs = [] if keep else None
    for m in masks:
        r = classify(space.to_antichain(m), k, split_mode, cache)
        counts[r.category] += 1
        if keep:
            recs.append(r)
    return counts, recs


def _chunks(items: list, size: int) -> list[list]:
    return [items[i:i + size] for i in range(0, len(items), size)]


def run_census(n: int, k: int, split_mode: str = "exact", include_empty: bool = False,
               jobs: int = 1, long_running: bool = False, records: list | None = None,
               chunk: int = 64) -> CensusReport:
    """Classify every k-uniform hypergraph on ``[n]`` and count categories.

    ``records``, when given, receives every :class:`ClassificationRecord`.
    Counts do not depend on ``jobs``.
    """
    check_scale(n, k, long_running)
    t0 = time.perf_counter()
    masks = enumerate_masks(n, k, include_empty)
    keep = records is not None
    work = [(n, k, c, split_mode, keep) for c in _chunks(masks, chunk)]
    report = CensusReport(n, k, split_mode=split_mode, include_empty=include_empty)
    for counts, recs in _map(_classify_chunk, work, jobs):
        report.counts.update(counts)
        if keep:
            records.extend(recs)
    report.seconds = time.perf_counter() - t0
    return report


def _map(fn, work: list, jobs: int):
    if jobs <= 1 or len(work) <= 1:
        return map(fn, work)
    return _pool_map(fn, work, jobs)


def _pool_map(fn, work: list, jobs: int):
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # results come back in submission order, so merging is deterministic
        yield from pool.map(fn, work)


@dataclass
class GapReport:
    n: int
    k: int
    # (sdepth S/I, sdepth I) -> count
    matrix: Counter = field(default_factory=Counter)
    include_empty: bool = False

    @property
    def total(self) -> int:
        return sum(self.matrix.values())

    def to_csv(self) -> str:
        lines = ["sdepth_quotient,sdepth_ideal,count"]
        for (q, i), c in sorted(self.matrix.items()):
            lines.append(f"{q},{i},{c}")
        return "\n".join(lines) + "\n"

    def table(self) -> str:
        rows = sorted({q for q, _ in self.matrix})
        cols = sorted({i for _, i in self.matrix})
        head = "S/I \\ I | " + " ".join(f"{c:>8}" for c in cols)
        out = [head, "-" * len(head)]
        for r in rows:
            cells = " ".join(f"{self.matrix.get((r, c), ''):>8}" for c in cols)
            out.append(f"{r:>7} | {cells}")
        return "\n".join(out)


def gap_pair(facets: Antichain, cache: DownDepthCache | None = None) -> tuple[int, int]:
    """Exact (sdepth S/I, sdepth I) for the Stanley-Reisner ideal of ``facets``."""
    cache = DownDepthCache() if cache is None else cache
    q = cache.get(facets)
    # the ideal side is known to beat the quotient side up to n = 7
    ideal = sdepth(complement_upset(facets), lower=0)
    return q, ideal.value


def _gap_chunk(args) -> list[tuple[int, int]]:
    n, k, masks = args
    space = edge_space(n, k)
    cache = DownDepthCache()
    return [gap_pair(space.to_antichain(m), cache) for m in masks]


def gap_census(n: int, k: int, include_empty: bool = False, jobs: int = 1,
               long_running: bool = False, chunk: int = 64) -> GapReport:
    """Counts of (sdepth S/I, sdepth I) over all k-uniform hypergraphs on ``[n]``."""
    check_scale(n, k, long_running)
    masks = enumerate_masks(n, k, include_empty)
    rep = GapReport(n, k, include_empty=include_empty)
    for pairs in _map(_gap_chunk, [(n, k, c) for c in _chunks(masks, chunk)], jobs):
        rep.matrix.update(pairs)
    return rep


def write_jsonl(records: Iterable[ClassificationRecord], fh, sort: bool = False) -> None:
    recs = list(records)
    if sort:
        recs.sort(key=lambda r: [set_key(m) for m in r.canon.masks])
    for r in recs:
        fh.write(json.dumps(r.to_json(), sort_keys=True) + "\n")
