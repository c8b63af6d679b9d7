import pytest
from hypothesis import given

from conftest import partitions
from spectral_dsp.core_combinatorics import (
    Partition,
    conjugate,
    full_flag,
    level_domain,
    level_function,
    minimal_level_indices,
    partitions_of,
    row_length,
    single_row,
    triangular_sum,
    union,
)

P = Partition


def brute_conjugate(p):
    return P(tuple(sum(1 for m in p if m >= j) for j in range(1, (p[0] if len(p) else 0) + 1)))


def brute_levels(p):
    """Number the boxes column by column and read off the column of each."""
    boxes = sorted((j, i) for i, m in enumerate(p) for j in range(m))
    return tuple(j + 1 for j, _ in boxes)


@pytest.mark.parametrize(
    "p, expected",
    [((3, 2, 1), (3, 2, 1)), ((4, 3, 1), (3, 2, 2, 1)), ((5,), (1, 1, 1, 1, 1)), ((1, 1), (2,))],
)
def test_conjugate_examples(p, expected):
    assert conjugate(P(p)) == P(expected)


def test_union_examples():
    assert union(P((2, 1)), P((4, 3, 1, 1, 1))) == P((4, 3, 2, 1, 1, 1, 1))
    assert union(P((3, 1)), P()) == P((3, 1))
    assert union(P((1,)), P((1,))) == P((1, 1))


def test_rejects_bad_parts():
    with pytest.raises(ValueError):
        P((1, 2))
    with pytest.raises(ValueError):
        P((2, 0))
    assert Partition.of([1, 3, 2]) == P((3, 2, 1))


@given(partitions())
def test_conjugate_is_involution(p):
    assert conjugate(conjugate(p)) == p
    assert conjugate(p) == brute_conjugate(p)
    assert conjugate(p).size == p.size


@given(partitions(), partitions())
def test_union_commutes_and_adds(p, q):
    assert union(p, q) == union(q, p)
    assert union(p, q).size == p.size + q.size


@given(partitions(max_size=10))
def test_levels_match_column_walk(p):
    assert p.levels == brute_levels(p)


@given(partitions(max_size=10))
def test_level_sum_identity(p):
    assert sum(level_function(p, mu) for mu in range(1, p.size + 1)) == triangular_sum(p)


def test_level_function_examples():
    assert P((3, 2, 1)).levels == (1, 1, 1, 2, 2, 3)
    assert P((3, 1)).levels == (1, 1, 2, 3)
    assert full_flag(4).levels == (1, 1, 1, 1)
    assert single_row(3).levels == (1, 2, 3)
    with pytest.raises(ValueError):
        level_function(P((2,)), 3)


@given(partitions())
def test_level_function_monotone(p):
    lv = p.levels
    assert all(lv[k] <= lv[k + 1] for k in range(len(lv) - 1))
    assert lv[-1] == p[0]


def test_level_domain_of_two_row():
    dom = level_domain(P((1, 1)))
    assert set(dom.points) == {(0, 0), (1, 0)}
    dom = level_domain(P((2,)))
    assert set(dom.points) == {(0, 0), (0, 1), (1, 0)}


@given(partitions())
def test_level_domain_is_staircase(p):
    dom = level_domain(p)
    assert len(dom) == triangular_sum(p)
    for u, a in dom.points:
        assert all((uu, aa) in dom for uu in range(u + 1) for aa in range(a + 1))
    for a, row in enumerate(dom.rows()):
        assert len(row) == row_length(p, a)


def test_minimal_indices_example():
    j_min, g_min = minimal_level_indices(P((3, 2, 1)))
    # column heights 3, 2, 1; bottoms of the first 3, 2 and 1 columns
    assert j_min == {6, 5, 3}
    assert g_min == {(0, 3), (1, 2), (3, 1)}


@given(partitions())
def test_minimal_indices_lie_in_domain_boundary(p):
    _, g_min = minimal_level_indices(p)
    dom = level_domain(p)
    for u, a in g_min:
        assert (u, a) not in dom and (u, a - 1) in dom


def test_partition_counts():
    assert [sum(1 for _ in partitions_of(n)) for n in range(1, 9)] == [1, 2, 3, 5, 7, 11, 15, 22]
