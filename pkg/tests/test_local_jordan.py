import pytest
from hypothesis import given, strategies as st

from conftest import partitions
from spectral_dsp.core_combinatorics import Partition
from spectral_dsp.exact_linalg import as_matrix, zeros
from spectral_dsp.local_jordan import (
    DegenerateChartError,
    NotNilpotentError,
    chart_equation,
    chart_module,
    exceptional_intersections,
    hensel_unit_part,
    jordan_type,
    kernel_dimensions,
    residue_jordan_type,
)
from spectral_dsp.scalar_poly_kernel import BiPoly, UniPoly, poly_substitute

X, Y = BiPoly.x(), BiPoly.y()
U, V = X, Y  # chart coordinates live in the same two slots
P = Partition


def jordan_block_sum(sizes):
    d = sum(sizes)
    m = zeros(d, d)
    start = 0
    for s in sizes:
        for k in range(s - 1):
            m[start + k + 1][start + k] = m[start + k + 1][start + k] + 1
        start += s
    return m


def test_chart_equation_examples():
    assert chart_equation(Y ** 2 - X ** 2, 1) == V ** 2 - 1
    assert chart_equation(Y ** 2 - X ** 3, 1) == V ** 2 - U
    assert chart_equation(Y, 3) == BiPoly.const(1)


def test_chart_coordinates_follow_the_exceptional_chain():
    """Substitution x = u^2 v, y = u v on a node."""
    f = Y ** 2 - X ** 2 * (X + 1)
    g = poly_substitute(f, U ** 2 * V, U * V)
    assert g == U ** 2 * V ** 2 - U ** 4 * V ** 2 * (U ** 2 * V + 1)


def test_exceptional_intersection_examples():
    assert exceptional_intersections(V ** 2 - 1) == (2, False)
    assert exceptional_intersections(V ** 2 - U) == (0, True)
    assert exceptional_intersections(V - 3) == (1, False)


def test_hensel_example():
    f = V * (V - 1) - U
    assert hensel_unit_part(f, 2) == V - 1 - U


def test_hensel_already_unit_rooted():
    f = V ** 2 - 4 + U * V
    assert hensel_unit_part(f, 3) == f


@given(st.integers(1, 4), st.lists(st.integers(-3, 3), min_size=2, max_size=6))
def test_hensel_factor_divides_mod_u_power(j, cs):
    """``V`` divides ``F`` modulo ``u^j``: the cofactor from long division has no u^(<j) remainder."""
    roots = [k for k in range(1, 4)]
    f = BiPoly.const(1)
    for r in roots:
        f = f * (V - r)
    f = f * V
    for t, c in enumerate(cs, start=1):
        f = f + U ** t * V ** (t % 3) * c
    vv = hensel_unit_part(f, j)
    assert vv.restrict("x", 0) == UniPoly.from_roots(roots)
    # reduce f modulo (u^j, V) by treating V as monic in v
    rem = f.truncate("x", j)
    e = vv.deg("y")
    lead_tail = vv - V ** e
    for _ in range(20):
        hi = {m: c for m, c in rem.terms.items() if m[1] >= e}
        if not hi:
            break
        step = BiPoly()
        for (a, b), c in hi.items():
            step = step + U ** a * V ** (b - e) * c
        rem = (rem - step * V ** e - step * lead_tail).truncate("x", j)
    assert rem.is_zero()


def test_degenerate_chart_raises():
    with pytest.raises(DegenerateChartError):
        chart_module(Y ** 2 - X ** 3, 1)


@pytest.mark.parametrize("sizes, expected", [((1, 1, 1), (1, 1, 1)), ((4,), (4,)), ((2, 1), (2, 1)),
                                             ((3, 3, 1), (3, 3, 1))])
def test_jordan_type_examples(sizes, expected):
    assert jordan_type(jordan_block_sum(sizes)) == P(expected)


def test_kernel_dimensions_of_two_plus_one():
    assert kernel_dimensions(jordan_block_sum((2, 1))) == [0, 2, 3]


def test_not_nilpotent():
    with pytest.raises(NotNilpotentError):
        jordan_type(as_matrix([[1, 0], [0, 0]]))


@given(partitions(max_size=7))
def test_jordan_type_recovers_blocks(p):
    assert jordan_type(jordan_block_sum(tuple(p))) == p


def test_single_row_center():
    """P = (r): one chart with r simple points on E_1, so r blocks of size 1."""
    q = (Y - X) * (Y - 2 * X) * (Y + 3 * X)
    rep = residue_jordan_type(q, 0, 0, P((3,)))
    assert rep.e == [3] and rep.jordan == P((1, 1, 1)) and rep.ok


def test_two_row_center_with_tangency():
    # y^2 = x is tangent to the fiber x = 0, so the strict transform first meets E_2
    rep = residue_jordan_type(Y ** 2 - X, 0, 0, P((1, 1)))
    assert rep.expected == P((2,))
    assert rep.jordan == P((2,)) and rep.e == [0, 1] and rep.ok


def test_module_dimension_is_j_times_e():
    mod = chart_module(Y ** 2 - X, 2)
    assert mod.dimension == 2 * mod.e == len(mod.y_operator)
