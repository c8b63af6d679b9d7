"""Jordan type of ``y`` on the fiber module over a center, chart by chart.

Chart ``j`` of the iterated blow-up at the origin has coordinates ``(u, v)``
with ``y = u v`` and ``x = u^j v^(j-1)`` (from ``u_(a-1) = u_a y``). In it
``E_j = {u = 0}``, ``E_(j-1)`` is ``{v = 0}`` and the next center sits at
``v = inf``. Near the points of the strict transform on ``E_j`` the module
cut out by ``x = 0`` is ``C[u, v] / (u^j, V)`` with ``V`` the Hensel factor
of ``F_j`` carrying the nonzero roots of ``F_j(0, v)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .core_combinatorics import Partition, conjugate, union
from .exact_linalg import Matrix, is_zero_matrix, mat_mul, rank, zeros
from .scalar_poly_kernel import (
    ONE,
    ZERO,
    BiPoly,
    ExactScalar,
    UniPoly,
    extract_monomial_cofactor,
    poly_substitute,
    poly_xgcd,
    translate,
)


class DegenerateChartError(ArithmeticError):
    """The strict transform meets a corner of the exceptional chain."""


class NotNilpotentError(ValueError):
    pass


def chart_equation(f: BiPoly, j: int) -> BiPoly:
    """Strict transform of ``f`` (center at the origin) in chart ``j``."""
    if f.is_zero():
        raise ValueError("zero polynomial has no chart equation")
    xs = BiPoly({(j, j - 1): 1})
    ys = BiPoly({(1, 1): 1})
    g = poly_substitute(f, xs, ys)
    _, g = extract_monomial_cofactor(g, "u")
    _, g = extract_monomial_cofactor(g, "v")
    return g


def exceptional_intersections(fj: BiPoly) -> Tuple[int, bool]:
    """``(e_j, degenerate)``: nonzero roots of ``F_j(0, v)``, and whether ``v = 0`` is a root."""
    f0 = fj.restrict("u", 0)
    if f0.is_zero():
        return 0, True
    k = f0.order_at(0)
    return f0.degree - k, k > 0


def _u_slices(f: BiPoly, j: int) -> List[UniPoly]:
    """``f = sum_t u^t f_t(v)`` truncated at ``u^j``."""
    groups = f.as_uni("u")
    return [groups.get(t, UniPoly()) for t in range(j)]


def hensel_unit_part(fj: BiPoly, j: int) -> BiPoly:
    """Monic-in-v factor ``V`` of ``F_j`` modulo ``u^j`` with ``V(0, v)`` the nonzero-root part."""
    f0 = fj.restrict("u", 0)
    if f0.is_zero():
        raise DegenerateChartError("F_j(0, v) vanishes identically: the curve contains E_j")
    k = f0.order_at(0)
    g = f0 // UniPoly.monomial(k)
    v0 = g.monic()
    u0 = f0 // v0
    one, s, _ = poly_xgcd(u0, v0)
    if one.degree != 0:
        raise DegenerateChartError("reductions share a root; re-seed the free values")
    slices = _u_slices(fj, j)
    us, vs = [u0], [v0]
    for t in range(1, j):
        err = slices[t]
        for a in range(1, t):
            err = err - us[a] * vs[t - a]
        dv = (err * s) % v0
        du, rem = (err - u0 * dv).divmod(v0)
        if not rem.is_zero():
            raise ArithmeticError("Hensel step left a remainder")
        us.append(du)
        vs.append(dv)
    terms: Dict[Tuple[int, int], ExactScalar] = {}
    for t, vt in enumerate(vs):
        for b, c in enumerate(vt.coeffs):
            terms[(t, b)] = c
    return BiPoly(terms)


def y_operator(vpoly: BiPoly, j: int) -> Matrix:
    """Multiplication by ``y = u v`` on the basis ``u^a v^b`` (``a < j``, ``b < e``)."""
    e = vpoly.deg("v")
    dim = j * e
    mat = zeros(dim, dim)
    tail = {(t, c): coef for (t, c), coef in vpoly.terms.items() if c < e}
    for a in range(j):
        for b in range(e):
            col = a * e + b
            na, nb = a + 1, b + 1
            if na >= j:
                continue
            if nb < e:
                mat[na * e + nb][col] = mat[na * e + nb][col] + ONE
                continue
            # v^e = -(V - v^e)
            for (t, c), coef in tail.items():
                if na + t < j:
                    row = (na + t) * e + c
                    mat[row][col] = mat[row][col] - coef
    return mat


def kernel_dimensions(m: Matrix) -> List[int]:
    """``[dim ker m^0, dim ker m^1, ...]`` until it stabilises at the full dimension."""
    d = len(m)
    dims = [0]
    power = [[ONE if i == k else ZERO for k in range(d)] for i in range(d)]
    for _ in range(d):
        power = mat_mul(power, m)
        dims.append(d - rank(power))
        if dims[-1] == d:
            break
    return dims


def jordan_type(m: Matrix) -> Partition:
    """Block sizes of a nilpotent matrix from kernel ranks of its powers."""
    d = len(m)
    if d == 0:
        return Partition()
    dims = kernel_dimensions(m)
    if dims[-1] != d:
        raise NotNilpotentError("matrix is not nilpotent")
    b = [dims[k] - dims[k - 1] for k in range(1, len(dims))]
    return conjugate(Partition(tuple(x for x in b if x)))


@dataclass(frozen=True)
class ChartModule:
    j: int
    chart: BiPoly
    V: BiPoly
    e: int
    y_operator: Matrix
    kernel_dims: Tuple[int, ...]
    blocks: Partition

    @property
    def dimension(self) -> int:
        return self.j * self.e

    def to_json(self) -> Dict:
        return {
            "j": self.j,
            "chart_equation": self.chart.to_json(),
            "V": self.V.to_json(),
            "e": self.e,
            "kernel_dims": list(self.kernel_dims),
            "blocks": self.blocks.to_json(),
        }


def chart_module(f: BiPoly, j: int) -> ChartModule:
    fj = chart_equation(f, j)
    e, degenerate = exceptional_intersections(fj)
    if degenerate:
        raise DegenerateChartError(
            f"chart {j}: strict transform passes through a corner (F_j(0,0) = 0); re-seed the free values"
        )
    vpoly = hensel_unit_part(fj, j)
    op = y_operator(vpoly, j)
    if op and not is_zero_matrix(_power(op, j)):
        raise ArithmeticError(f"y^{j} is not zero on chart {j}")
    dims = kernel_dimensions(op) if op else [0]
    return ChartModule(j, fj, vpoly, e, op, tuple(dims), jordan_type(op))


def _power(m: Matrix, k: int) -> Matrix:
    out = m
    for _ in range(k - 1):
        out = mat_mul(out, m)
    return out


@dataclass(frozen=True)
class JordanReport:
    subpartition: Partition
    charts: Tuple[ChartModule, ...]
    jordan: Partition
    expected: Partition

    @property
    def e(self) -> List[int]:
        return [c.e for c in self.charts]

    @property
    def expected_e(self) -> List[int]:
        m = list(self.subpartition) + [0]
        return [m[j] - m[j + 1] for j in range(len(m) - 1)]

    @property
    def ok(self) -> bool:
        return self.jordan == self.expected and self.e == self.expected_e

    def to_json(self) -> Dict:
        return {
            "subpartition": self.subpartition.to_json(),
            "jordan_type": self.jordan.to_json(),
            "expected": self.expected.to_json(),
            "e": self.e,
            "expected_e": self.expected_e,
            "charts": [c.to_json() for c in self.charts],
            "ok": self.ok,
        }


def residue_jordan_type(q: BiPoly, x0, y0, p: Partition) -> JordanReport:
    """Aggregate the chart blocks over ``j = 1..l(P)`` at the center ``(x0, y0)``."""
    f = translate(q, x0, y0)
    charts = tuple(chart_module(f, j) for j in range(1, len(p) + 1))
    total = Partition()
    for c in charts:
        total = union(total, c.blocks)
    return JordanReport(p, charts, total, conjugate(p))
