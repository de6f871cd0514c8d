"""Slow reference implementations used only by the tests.

They deliberately share no code with the package: sets are frozensets of
1-based vertices, not bitmasks, and every search is plain brute force.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import chain, combinations, permutations, product
from math import comb


def powerset(ground):
    s = sorted(ground)
    return [frozenset(c) for r in range(len(s) + 1) for c in combinations(s, r)]


def down_set(facets):
    out = set()
    for f in facets:
        out.update(powerset(f))
    return frozenset(out)


def up_complement(facets, n):
    d = down_set(facets)
    return frozenset(s for s in powerset(range(1, n + 1)) if s not in d)


def brute_sdepth(family, n) -> int:
    """Best min top size over every partition into intervals (family as frozensets)."""
    family = frozenset(family)
    if not family:
        return n

    @lru_cache(maxsize=None)
    def best(rest):
        if not rest:
            return n
        low = min(rest, key=lambda s: (len(s), sorted(s)))
        score = -1
        for top in rest:
            if not low <= top:
                continue
            block = frozenset(low | frozenset(x) for x in powerset(top - low))
            if block <= rest:
                score = max(score, min(len(top), best(rest - block)))
        return score

    return best(family)


def crit_by_h(f, k) -> bool:
    """Criterion verdict from the h-vector: passes iff every h_j is nonnegative."""
    h = [sum((-1) ** (j - i) * comb(k - i, j - i) * f[i] for i in range(j + 1))
         for j in range(k + 1)]
    return all(x >= 0 for x in h)


def crit_simulate(f, k) -> bool:
    """Greedy absorption written out round by round."""
    a = list(f)
    for i in range(k + 1):
        take = a[i]
        for j in range(i, k + 1):
            a[j] -= take * comb(k - i, j - i)
            if a[j] < 0:
                return False
    return True


def canon_tuples(edges, n):
    """Lexicographically least sorted edge list over all relabelings."""
    def key(t):  # cardinality, then the set read as a binary number
        return len(t), sum(2 ** (v - 1) for v in t)

    best = None
    for p in permutations(range(1, n + 1)):
        img = sorted((tuple(sorted(p[v - 1] for v in e)) for e in edges), key=key)
        if best is None or [key(t) for t in img] < [key(t) for t in best]:
            best = img
    return tuple(best)


def count_uniform_classes(n, k, include_empty=False) -> int:
    all_edges = list(combinations(range(1, n + 1), k))
    seen = set()
    for r in range(0 if include_empty else 1, len(all_edges) + 1):
        for es in combinations(all_edges, r):
            seen.add(canon_tuples(es, n))
    return len(seen)


def grid_points(gens_I, gens_J, g):
    def le(a, b):
        return all(x <= y for x, y in zip(a, b))
    return {c for c in product(*(range(x + 1) for x in g))
            if any(le(a, c) for a in gens_I) and not any(le(b, c) for b in gens_J)}


def splits_brute(facets, x, n):
    """Definition of splitting with brute-force depths (tiny n only)."""
    with_x = [f for f in facets if x in f]
    rest = [f for f in facets if x not in f]
    if not with_x:
        return True
    if not all(any(f - {x} <= t for t in rest) for f in with_x):
        return False
    return brute_sdepth(down_set(rest), n) >= brute_sdepth(down_set(facets), n)


def all_pure_antichains(n, k):
    """Every nonempty k-uniform edge set on [n], as lists of frozensets."""
    edges = [frozenset(c) for c in combinations(range(1, n + 1), k)]
    return chain.from_iterable(
        ([list(es) for es in combinations(edges, r)] for r in range(1, len(edges) + 1)))
