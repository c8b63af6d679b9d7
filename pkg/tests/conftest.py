"""Shared strategies, fixtures and the acceptance summary hook."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from spectral_dsp.core_combinatorics import Partition
from spectral_dsp.parabolic_data import MarkedPoints, ParabolicData
from spectral_dsp.scalar_poly_kernel import BiPoly, ExactScalar, UniPoly

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


# ------------------------------------------------------------ strategies

small_ints = st.integers(min_value=-6, max_value=6)
fractions = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))
gaussian = st.builds(ExactScalar, fractions, fractions)
rational = st.builds(ExactScalar, fractions)


@st.composite
def partitions(draw, max_size: int = 8, min_size: int = 1):
    n = draw(st.integers(min_size, max_size))
    parts, left = [], n
    while left:
        k = draw(st.integers(1, left))
        parts.append(k)
        left -= k
    return Partition.of(parts)


@st.composite
def unipolys(draw, max_degree: int = 4, coeff=rational):
    return UniPoly(draw(st.lists(coeff, max_size=max_degree + 1)))


@st.composite
def bipolys(draw, max_degree: int = 3, coeff=st.builds(ExactScalar, small_ints)):
    keys = st.tuples(st.integers(0, max_degree), st.integers(0, max_degree))
    return BiPoly(draw(st.dictionaries(keys, coeff, max_size=6)))


# ------------------------------------------------------------ fixtures


@pytest.fixture
def worked_example():
    """One point, ``m = (3, 2, 1)`` with eigenvalues ``(1, 2, 1)``."""
    data = ParabolicData.build([[(3, 1), (2, 2), (1, 1)]])
    return data, MarkedPoints((0,))


@pytest.fixture
def hypergeometric():
    """Rank 2 on three points with a unique, integral spectral curve."""
    data = ParabolicData.build([[(1, 0), (1, 1)], [(1, 2), (1, 5)], [(1, 1), (1, 12)]])
    return data, MarkedPoints((0, 1, 2))


def worked_example_matrices(x1, x2):
    """The three coefficient matrices and right-hand sides written out by hand."""
    A0 = [
        [x1 ** 5, x1 ** 4, x1 ** 3, x1 ** 2, x1, 1],
        [5 * x1 ** 4, 4 * x1 ** 3, 3 * x1 ** 2, 2 * x1, 1, 0],
        [10 * x1 ** 3, 6 * x1 ** 2, 3 * x1, 1, 0, 0],
        [10 * x1 ** 2, 4 * x1, 1, 0, 0, 0],
        [x2 ** 5, x2 ** 4, x2 ** 3, x2 ** 2, x2, 1],
        [5 * x2 ** 4, 4 * x2 ** 3, 3 * x2 ** 2, 2 * x2, 1, 0],
    ]
    B0 = [-x1 ** 6, -6 * x1 ** 5, -15 * x1 ** 4, -20 * x1 ** 3, -x2 ** 6, -6 * x2 ** 5]
    A1 = [A0[0], A0[1], A0[4]]
    A2 = [A0[0]]
    return {0: (A0, B0), 1: (A1, [0, 0, 0]), 2: (A2, [0])}
