from itertools import combinations

import networkx as nx
import pytest

from helpers import ac, mask, sets_of
from oracles import all_pure_antichains, brute_sdepth, down_set, up_complement
from stanleydepth.lattice import (Antichain, SetFamily, boolean_lattice, complement_upset,
                                  down_closure, singleton_partition, validate_partition)
from stanleydepth.solver import (decide_sdepth_at_least, hopcroft_karp, matching_cover,
                                 matching_partition, oracle_sdepth, sdepth)

SIX = "123 124 125 134 345 234"


def test_ideal_example_reaches_four():
    up = complement_upset(ac("123 124 145 234", 5))
    w = decide_sdepth_at_least(up, 4)
    assert w is not None and validate_partition(w, up) is None and w.sdepth >= 4


def test_six_facet_quotient_impossible_at_three():
    down = down_closure(ac(SIX, 5))
    assert decide_sdepth_at_least(down, 3) is None
    ans = sdepth(down)
    assert ans.value == 2 and validate_partition(ans.witness, down) is None


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_nonempty_subsets_depth_one(n):
    fam = SetFamily(frozenset(range(1, 1 << n)), n)
    w = decide_sdepth_at_least(fam, 1)
    assert w is not None and validate_partition(w, fam) is None
    assert validate_partition(singleton_partition(n), fam) is None


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 1), (3, 2), (4, 2), (5, 3), (6, 3), (7, 4)])
def test_maximal_ideal(n, expected):
    # ceil(n/2); n <= 4 rechecked by brute force below
    ans = sdepth(SetFamily(frozenset(range(1, 1 << n)), n))
    assert ans.value == expected


def test_maximal_ideal_brute_force():
    for n in (1, 2, 3, 4):
        fam = [s for s in up_complement([frozenset()], n)]
        assert sdepth(SetFamily(frozenset(range(1, 1 << n)), n)).value == brute_sdepth(fam, n)


@pytest.mark.parametrize("n", [0, 1, 3, 5])
def test_full_lattice(n):
    assert sdepth(boolean_lattice(n)).value == n


def test_empty_family_convention():
    ans = sdepth(SetFamily(frozenset(), 4))
    assert ans.value == 4 and ans.empty


def test_k_above_n_is_impossible():
    assert decide_sdepth_at_least(boolean_lattice(3), 4) is None


@pytest.mark.parametrize("n", [2, 3, 4])
def test_matches_brute_force(n):
    for k in range(1, n + 1):
        for facets in all_pure_antichains(n, k):
            a = Antichain.from_sets(facets, n)
            for fam, ref in ((down_closure(a), down_set(facets)),
                             (complement_upset(a), up_complement(facets, n))):
                assert sets_of(fam.masks) == ref
                assert sdepth(fam).value == brute_sdepth(ref, n) == oracle_sdepth(fam)


def test_prune_levels_agree():
    for n in (4, 5):
        for facets in list(all_pure_antichains(n, 3))[::7]:
            a = Antichain.from_sets(facets, n)
            for fam in (down_closure(a), complement_upset(a)):
                vals = {sdepth(fam, prune=p).value for p in ("none", "cc", "scc")}
                assert len(vals) == 1


def test_oracle_guard():
    with pytest.raises(ValueError):
        oracle_sdepth(boolean_lattice(5))


def _nx_matching_size(facets: Antichain, k: int) -> tuple[int, int]:
    up = complement_upset(facets).masks
    left = [m for m in up if bin(m).count("1") == k]
    g = nx.Graph()
    g.add_nodes_from(("L", m) for m in left)
    for m in left:
        for v in range(facets.n):
            t = m | 1 << v
            if t != m and t in up:
                g.add_edge(("L", m), ("R", t))
    match = nx.bipartite.maximum_matching(g, top_nodes=[("L", m) for m in left])
    return len(left), sum(1 for u in match if u[0] == "L")


def test_matching_cover_examples():
    all_pairs = Antichain([sum(1 << v for v in c) for c in combinations(range(5), 2)], 5)
    assert matching_cover(all_pairs, 2)
    assert matching_cover(ac("12 13 45", 5), 2)
    assert _nx_matching_size(ac("12 13 45", 5), 2)[1] == 7
    assert matching_cover(ac("1234", 4), 3)  # empty left side


def test_matching_cover_against_networkx():
    for n in (4, 5):
        for k in range(1, n):
            for facets in list(all_pure_antichains(n, k))[::5]:
                a = Antichain.from_sets(facets, n)
                for j in range(1, n):
                    left, size = _nx_matching_size(a, j)
                    assert matching_cover(a, j) == (left == size)


def test_matching_partition_is_valid():
    a = ac("123 45", 5)  # every 1-set lies in the quotient and k = 2 <= (5-1)/2
    p = matching_partition(a, 2)
    up = complement_upset(a)
    assert validate_partition(p, up) is None and p.sdepth >= 3


def test_hopcroft_karp_small():
    adj = {1: ["a", "b"], 2: ["a"], 3: ["c"]}
    m = hopcroft_karp([1, 2, 3], adj)
    assert len(m) == 3 and m[2] == "a"


def test_monotone_in_k():
    fam = complement_upset(ac("123 145 246 356", 6))
    ans = sdepth(fam)
    for k in range(ans.value + 1):
        w = decide_sdepth_at_least(fam, k)
        assert w is not None and w.sdepth >= k
    assert decide_sdepth_at_least(fam, ans.value + 1) is None
