import io
import json
import random

import pytest
from hypothesis import given, strategies as st

from helpers import ac
from oracles import canon_tuples, count_uniform_classes
from stanleydepth.enumeration import (BAD_DEGREE, CATEGORIES, COUNTEREXAMPLE, FAIL_SCC, SDEPTH_OK,
                                      SPLITS,
                                      ScaleError, canonical_form, canonical_form_bruteforce,
                                      check_scale, classify, edge_space, enumerate_hypergraphs,
                                      enumerate_masks, gap_census, run_census, write_jsonl)
from stanleydepth.lattice import Antichain, Interval, IntervalPartition, complement_upset, \
    validate_partition
from stanleydepth.reductions import restrict_support


def _tuples(a: Antichain):
    return tuple(tuple(v + 1 for v in range(a.n) if m >> v & 1) for m in a.masks)


def test_canonical_form_examples():
    a = ac("13 35", 5)
    assert canonical_form(restrict_support(a)) == ac("12 13", 3)
    assert canonical_form(a) == ac("12 13", 5)
    assert _tuples(canonical_form(a)) == canon_tuples(_tuples(a), 5)
    c = canonical_form(ac("123 145 246", 6))
    assert canonical_form(c) == c
    with pytest.raises(ValueError):
        canonical_form(Antichain([1], 9))


def test_canonical_form_mixed_sizes_uses_brute_force():
    a = ac("12 345", 5)
    assert canonical_form(a) == canonical_form_bruteforce(a) == ac("12 345", 5)
    assert canonical_form(ac("4 123", 4)) == ac("1 234", 4)


perm6 = st.permutations(list(range(6)))
uniform6 = st.integers(1, 5).flatmap(
    lambda k: st.lists(st.integers(0, len(edge_space(6, k).edges) - 1), min_size=1,
                       max_size=12).map(lambda idx: Antichain(
                           [edge_space(6, k).edges[i] for i in idx], 6)))


@given(uniform6, perm6)
def test_canonical_form_invariant(a, perm):
    b = a.relabel(perm)
    assert canonical_form(a) == canonical_form(b) == canonical_form(canonical_form(a))
    assert _tuples(canonical_form(a)) == canon_tuples(_tuples(a), 6)


@given(uniform6, perm6)
def test_classify_invariant(a, perm):
    assert classify(a).category == classify(a.relabel(perm)).category


@pytest.mark.parametrize("n,k", [(3, 1), (3, 2), (4, 2), (4, 3), (5, 2), (5, 3)])
def test_counts_match_brute_force(n, k):
    assert len(enumerate_hypergraphs(n, k)) == count_uniform_classes(n, k)


def test_published_counts():
    assert len(enumerate_hypergraphs(3, 2)) == 3
    assert len(enumerate_hypergraphs(6, 3, include_empty=True)) == 2136
    assert len(enumerate_hypergraphs(7, 5)) == 1043
    assert len(enumerate_hypergraphs(6, 2, include_empty=True)) == 156


@pytest.mark.parametrize("n,k", [(5, 2), (6, 2), (6, 3), (6, 4), (7, 2)])
def test_strategies_agree(n, k):
    ex = enumerate_masks(n, k, strategy="exhaustive")
    aug = enumerate_masks(n, k, strategy="augment")
    assert ex == aug and len(set(ex)) == len(ex)


def _stage_four(facets):
    from stanleydepth import enumeration

    orig = enumeration.splits
    enumeration.splits = lambda *a, **kw: None
    try:
        return classify(facets)
    finally:
        enumeration.splits = orig


def test_classify_examples():
    six = ac("123 124 125 134 345 234", 5)
    assert classify(six).category == FAIL_SCC
    assert classify(ac("12 13", 3)).category == BAD_DEGREE
    # the split test fires first (vertex 3), so stage four is exercised directly
    s = ac("123 124 145 234", 5)
    rec = classify(s)
    assert rec.category == SPLITS and rec.split_vertex == 3
    rec = _stage_four(s)
    assert rec.category == SDEPTH_OK
    up = complement_upset(s)
    ivs = [Interval(lo, hi) for lo, hi in rec.witness]
    used = {m for iv in ivs for m in iv.members()}
    part = IntervalPartition(tuple(ivs + [Interval(m, m) for m in up if m not in used]), 5)
    assert validate_partition(part, up) is None and part.sdepth >= 4
    assert classify(Antichain([], 4)).category == BAD_DEGREE


def test_census_partition_and_jobs():
    one = run_census(6, 4, include_empty=True)
    two = run_census(6, 4, include_empty=True, jobs=2, chunk=16)
    assert one.row() == two.row()
    assert one.total == sum(one.counts[c] for c in CATEGORIES) == 156
    assert one.counts[COUNTEREXAMPLE] == 0
    assert json.dumps(one.to_json(), sort_keys=True) == json.dumps(two.to_json(), sort_keys=True)


@pytest.mark.parametrize("n", [4, 5])
def test_census_small_no_counterexample(n):
    for k in range(1, n + 1):
        rep = run_census(n, k)
        assert rep.counts[COUNTEREXAMPLE] == 0
        assert rep.total == len(enumerate_hypergraphs(n, k))


@pytest.mark.parametrize("n,k", [(5, 2), (5, 3), (6, 4)])
def test_gap_strictly_below_diagonal(n, k):
    rep = gap_census(n, k)
    assert rep.total == len(enumerate_hypergraphs(n, k))
    assert all(q < i for q, i in rep.matrix)
    lines = rep.to_csv().splitlines()
    assert lines[0] == "sdepth_quotient,sdepth_ideal,count"
    assert sum(int(x.split(",")[2]) for x in lines[1:]) == rep.total


def test_scale_gate():
    check_scale(6, 3)
    check_scale(7, 5)
    with pytest.raises(ScaleError):
        check_scale(7, 3)
    check_scale(7, 4, long_running=True)
    with pytest.raises(ScaleError):
        check_scale(8, 2, long_running=True)
    with pytest.raises(ScaleError):
        run_census(7, 4)


def test_jsonl_records():
    recs = []
    run_census(5, 3, records=recs)
    buf = io.StringIO()
    write_jsonl(reversed(recs), buf, sort=True)
    rows = [json.loads(line) for line in buf.getvalue().splitlines()]
    assert len(rows) == len(recs)
    assert {r["category"] for r in rows} <= set(CATEGORIES)
    buf2 = io.StringIO()
    write_jsonl(random.Random(0).sample(recs, len(recs)), buf2, sort=True)
    assert buf.getvalue() == buf2.getvalue()
    assert all("split_vertex" in r for r in rows if r["category"] == "Splits")
