from math import comb

from hypothesis import given, strategies as st

from stanleydepth.lattice import (Antichain, boolean_lattice, complement_upset, down_closure,
                                  f_vector, validate_partition)
from stanleydepth.reductions import bad_degree
from stanleydepth.solver import decide_sdepth_at_least, sdepth, sdepth_upper_bound

antichains = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.integers(0, (1 << n) - 1), max_size=7).map(
        lambda ms: Antichain.maximal(ms, n)))
nonempty = antichains.filter(lambda a: a.masks)


@given(antichains)
def test_closures_partition_the_lattice(a):
    down, up = down_closure(a).masks, complement_upset(a).masks
    assert not down & up
    assert down | up == boolean_lattice(a.n).masks


@given(antichains)
def test_f_vector_bounds(a):
    f = f_vector(down_closure(a), a.n)
    assert all(0 <= x <= comb(a.n, i) for i, x in enumerate(f))
    assert (f[0] == 1) == bool(a.masks)


@given(nonempty, st.booleans())
def test_solver_witness_is_certified(a, quotient):
    fam = down_closure(a) if quotient else complement_upset(a)
    ans = sdepth(fam)
    if ans.empty:
        assert not fam.masks and ans.value == a.n
        return
    assert validate_partition(ans.witness, fam) is None
    assert ans.witness.sdepth == ans.value
    assert sum(len(iv) for iv in ans.witness) == len(fam)
    assert ans.value <= sdepth_upper_bound(fam)
    assert decide_sdepth_at_least(fam, ans.value + 1) is None
    if ans.value:
        w = decide_sdepth_at_least(fam, ans.value - 1)
        assert w is not None and validate_partition(w, fam) is None


@given(nonempty, st.randoms(use_true_random=False))
def test_bad_degree_relabel_invariant(a, rnd):
    perm = list(range(a.n))
    rnd.shuffle(perm)
    assert bad_degree(a).bad_degree == bad_degree(a.relabel(perm)).bad_degree


@given(nonempty, st.randoms(use_true_random=False))
def test_sdepth_relabel_invariant(a, rnd):
    perm = list(range(a.n))
    rnd.shuffle(perm)
    b = a.relabel(perm)
    assert sdepth(down_closure(a)).value == sdepth(down_closure(b)).value
    assert sdepth(complement_upset(a)).value == sdepth(complement_upset(b)).value
