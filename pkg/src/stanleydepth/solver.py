"""Exact Stanley depth of set families by interval-partition search.

To decide ``sdepth(F) >= k`` it is enough to put every member of size
``< k`` into an interval whose top is a ``k``-set of ``F``; everything else
can stay in trivial intervals. The search branches on the smallest uncovered
member, which is necessarily the bottom of its interval.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from . import kernels
from .lattice import (Antichain, Interval, IntervalPartition, Role, SetFamily,
                      complement_upset, popcount, set_key, submasks)

log = logging.getLogger(__name__)

ORACLE_MAX_N = 4


@dataclass(frozen=True)
class SdepthAnswer:
    value: int
    witness: IntervalPartition
    node_count: int = 0
    # True when the family was empty and value is the convention n
    empty: bool = False


class CoverProblem:
    """Bitset encoding of "cover the small members with k-topped intervals".

    Points are the members of size at most ``k``, numbered in canonical order.
    """

    def __init__(self, family: SetFamily, k: int, check_convex: bool | None = None):
        self.family = family
        self.k = k
        pts = sorted((m for m in family.masks if popcount(m) <= k), key=set_key)
        self.points = pts
        index = {m: i for i, m in enumerate(pts)}
        self.index = index
        if check_convex is None:
            check_convex = family.role is Role.GENERAL
        tops = [m for m in pts if popcount(m) == k]
        self.need = 0
        self.cand_masks: list[int] = []
        self.cand_intervals: list[Interval] = []
        self.cover_of: list[list[int]] = [[] for _ in pts]
        for i, p in enumerate(pts):
            if popcount(p) == k:
                continue
            self.need |= 1 << i
            for t in tops:
                if p & ~t:
                    continue
                mask = 0
                ok = True
                for s in submasks(t & ~p):
                    j = index.get(p | s)
                    if j is None:
                        ok = False
                        break
                    mask |= 1 << j
                if not ok:
                    if check_convex:
                        continue
                    raise ValueError("family is not interval-convex")
                c = len(self.cand_masks)
                for j in range(len(pts)):
                    if mask >> j & 1 and popcount(pts[j]) < k:
                        self.cover_of[j].append(c)
                self.cand_masks.append(mask)
                self.cand_intervals.append(Interval(p, t))
        self.avail = (1 << len(pts)) - 1
        self.level_masks = [0] * (k + 1)  # j-sets among the points
        for i, p in enumerate(pts):
            self.level_masks[popcount(p)] |= 1 << i
        self.up_masks = [0] * len(pts)
        for i, p in enumerate(pts):
            for j, q in enumerate(pts):
                if p & q == p:
                    self.up_masks[i] |= 1 << j

    def solve(self, prune: str = "cc", memo_cap: int = 1 << 20):
        cc = prune in ("cc", "scc")
        chosen, nodes = kernels.cover_search(
            self.need, self.avail, self.cand_masks, self.cover_of,
            self.level_masks if cc else None, self.k,
            self.up_masks if prune == "scc" else None, memo_cap)
        return chosen, nodes

    def witness(self, chosen: list[int]) -> IntervalPartition:
        used = set()
        intervals = []
        for c in chosen:
            iv = self.cand_intervals[c]
            intervals.append(iv)
            used.update(iv.members())
        for m in sorted(self.family.masks, key=set_key):
            if m not in used:
                intervals.append(Interval(m, m))
        return IntervalPartition(tuple(intervals), self.family.n)


def decide_sdepth_at_least(family: SetFamily, k: int, prune: str = "cc",
                           stats: dict | None = None) -> IntervalPartition | None:
    """A partition of ``family`` with every top of size ``>= k``, or ``None``.

    ``None`` is only returned after the search space is exhausted.
    ``prune`` is ``"none"``, ``"cc"`` (residual counting criterion, the
    default) or ``"scc"`` (also on the up set of every open member).
    """
    n = family.n
    if k > n:
        return None
    if k <= 0 or not family.masks:
        return IntervalPartition(tuple(Interval(m, m) for m in sorted(family.masks, key=set_key)), n)
    prob = CoverProblem(family, k)
    for i, cands in enumerate(prob.cover_of):
        if prob.need >> i & 1 and not cands:
            if stats is not None:
                stats["nodes"] = stats.get("nodes", 0)
            return None
    chosen, nodes = prob.solve(prune)
    if stats is not None:
        stats["nodes"] = stats.get("nodes", 0) + nodes
    if chosen is None:
        return None
    return prob.witness(chosen)


def sdepth_upper_bound(family: SetFamily) -> int:
    """Smallest size of a maximal member: it tops its own interval."""
    return min(popcount(m) for m in family.maximal().masks)


def sdepth(family: SetFamily, prune: str = "cc", lower: int = 0) -> SdepthAnswer:
    """Exact Stanley depth by an ascending scan over ``k``.

    ``lower`` is a depth already known to be achievable. An empty family gets
    the value ``n`` with ``empty=True``.
    """
    n = family.n
    if not family.masks:
        return SdepthAnswer(n, IntervalPartition((), n), 0, empty=True)
    stats: dict = {}
    best = decide_sdepth_at_least(family, lower, prune, stats)
    value = lower
    ub = sdepth_upper_bound(family)
    for k in range(lower + 1, ub + 1):
        w = decide_sdepth_at_least(family, k, prune, stats)
        if w is None:
            break
        best, value = w, k
    return SdepthAnswer(value, best, stats.get("nodes", 0))


def hopcroft_karp(left: list[int], adj: dict[int, list[int]]) -> dict[int, int]:
    """Maximum bipartite matching as a left -> right dict."""
    INF = float("inf")
    pair_l: dict[int, int] = {}
    pair_r: dict[int, int] = {}
    dist: dict[int, float] = {}

    def bfs() -> bool:
        q = deque()
        for u in left:
            if u in pair_l:
                dist[u] = INF
            else:
                dist[u] = 0
                q.append(u)
        found = False
        while q:
            u = q.popleft()
            for v in adj[u]:
                w = pair_r.get(v)
                if w is None:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adj[u]:
            w = pair_r.get(v)
            if w is None or (dist[w] == dist[u] + 1 and dfs(w)):
                pair_l[u] = v
                pair_r[v] = u
                return True
        dist[u] = INF
        return False

    while bfs():
        for u in left:
            if u not in pair_l:
                dfs(u)
    return pair_l


def _slice_matching(facets: Antichain, k: int):
    up = complement_upset(facets)
    left = sorted((m for m in up.masks if popcount(m) == k), key=set_key)
    adj = {u: [u | 1 << v for v in range(facets.n)
               if not u >> v & 1 and (u | 1 << v) in up.masks] for u in left}
    return up, left, hopcroft_karp(left, adj)


def matching_cover(facets: Antichain, k: int) -> bool:
    """Is there a matching saturating the k-sets of P_I into its (k+1)-sets?"""
    _, left, pairs = _slice_matching(facets, k)
    return len(pairs) == len(left)


def matching_partition(facets: Antichain, k: int) -> IntervalPartition | None:
    """Partition of P_I from a saturating k/(k+1) matching plus trivial intervals.

    Only a witness for depth ``k + 1`` when P_I has no sets below size ``k``.
    """
    up, left, pairs = _slice_matching(facets, k)
    if len(pairs) != len(left):
        return None
    used = set(pairs) | set(pairs.values())
    ivs = [Interval(a, b) for a, b in sorted(pairs.items())]
    ivs += [Interval(m, m) for m in sorted(up.masks, key=set_key) if m not in used]
    return IntervalPartition(tuple(ivs), facets.n)


def oracle_sdepth(family: SetFamily) -> int:
    """Stanley depth by enumerating every interval partition (tiny n only)."""
    if family.n > ORACLE_MAX_N:
        raise ValueError(f"oracle limited to n <= {ORACLE_MAX_N}")
    n = family.n
    if not family.masks:
        return n
    order = sorted(family.masks, key=set_key)

    @lru_cache(maxsize=None)
    def best(rest: frozenset) -> int:
        if not rest:
            return n
        e = next(m for m in order if m in rest)
        top = -1
        for lo in rest:
            if lo & ~e:
                continue
            for hi in rest:
                if e & ~hi:
                    continue
                members = [lo | s for s in submasks(hi & ~lo)]
                if all(m in rest for m in members):
                    top = max(top, min(popcount(hi), best(rest - frozenset(members))))
        return top

    return best(frozenset(family.masks))


def all_k_subsets(n: int, k: int) -> list[int]:
    return [sum(1 << v for v in c) for c in combinations(range(n), k)]
