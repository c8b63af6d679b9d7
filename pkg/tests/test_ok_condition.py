import pytest
from hypothesis import given, strategies as st

from conftest import partitions
from spectral_dsp.core_combinatorics import Partition, full_flag, single_row
from spectral_dsp.ok_condition import (
    controllability,
    controllability_strict,
    criteria_equivalence,
    deg_L,
    equivalence_sweep,
    ok_condition,
    simpson_criterion,
    simpson_invariants,
)

P = Partition
FLAG2 = P((1, 1))


def test_deg_l_examples():
    assert deg_L(0, 4, 2, [FLAG2] * 4) == 0
    assert deg_L(1, 1, 2, [FLAG2]) == 1


def test_ok_genus0_examples():
    rep = ok_condition(0, 3, [FLAG2] * 3)
    assert rep.passed and rep.rows[0].lhs == 3 and rep.rows[0].rhs == 4
    rep = ok_condition(0, 3, [P((2,))] * 3)
    assert not rep.passed and rep.failing_mu == 2 and rep.rows[0].lhs == 6


@pytest.mark.parametrize("r", [2, 3, 5])
def test_ok_genus1_single_row_is_exceptional(r):
    rep = ok_condition(1, 1, [single_row(r)])
    assert not rep.passed and rep.case == "genus1-exceptional"


def test_ok_higher_genus_always_passes():
    assert ok_condition(3, 2, [single_row(4)] * 2).passed


def test_ok_requires_matching_sizes():
    with pytest.raises(ValueError):
        ok_condition(0, 2, [P((2,)), P((1,))])


def test_controllability_examples():
    assert controllability_strict(0, 2, (1, 1, 1))
    assert not controllability(0, 1, (1, 1, 1))
    assert controllability(0, 5, (0, 0, 0))


def test_controllability_forms_coincide_on_the_line():
    for deg in range(-2, 8):
        for t in range(0, 10):
            assert controllability(0, deg, (t,)) == controllability_strict(0, deg, (t,))


def test_simpson_examples():
    assert simpson_criterion([FLAG2] * 3)
    assert not simpson_criterion([P((2,)), P((2,)), FLAG2])
    assert not simpson_criterion([P((1,))] * 3)
    with pytest.raises(ValueError):
        simpson_criterion([P((2,))] * 3)


def test_simpson_invariants_full_flag():
    for r in range(1, 7):
        d, R = simpson_invariants(full_flag(r))
        assert d == r * r - r and R == r - 1


@given(partitions(max_size=7))
def test_simpson_invariants_range(p):
    d, R = simpson_invariants(p)
    assert 0 <= d <= p.size * p.size - p.size
    assert 0 <= R < p.size


def test_equivalence_on_named_examples():
    assert criteria_equivalence([FLAG2] * 3).equivalent
    e = criteria_equivalence([P((2,)), P((2,)), FLAG2])
    assert e.equivalent and not e.ok_verdict


def test_small_sweep():
    s = equivalence_sweep(4, (3,))
    assert s.tuples == s.agreements and not s.mismatches
    assert s.ok_true > 0


@given(st.integers(2, 5).flatmap(
    lambda r: st.lists(partitions(max_size=r, min_size=r), min_size=2, max_size=3).map(
        lambda ps: tuple(ps) + (full_flag(r),))))
def test_random_tuples_agree(tup):
    assert criteria_equivalence(tup).equivalent
