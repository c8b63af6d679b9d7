"""Genus-0 constraint systems on the coefficients of ``(s_1, ..., s_r)``.

Coordinates: ``x[mu, a, i]`` is the a-th Taylor coefficient of ``s_mu`` at
``p_i`` (the a-th derivative divided by a!). A center ``(p_i, xi)`` with
subpartition ``P`` imposes, for every ``a`` and every ``u`` below the row
length ``c(a, P)``, that the divided derivative ``d_y^u d_x^a q / (u! a!)``
vanishes at ``(p_i, xi)``. Stacking the centers of one point gives the block
``A[a, i] x[., a, i] = B[a, i]``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .core_combinatorics import Partition, row_length
from .exact_linalg import (
    Matrix,
    SingularMatrixError,
    mat_vec,
    rank,
    solve,
    solve_any,
    submatrix_columns,
)
from .parabolic_data import (
    DistinctPart,
    MarkedPoints,
    ParabolicData,
    distinct_part,
    residue_condition,
)
from .scalar_poly_kernel import ZERO, ExactScalar, UniPoly, scalar


class ConstraintError(ValueError):
    """Raised when a block cannot be solved or a lift is infeasible."""

    def __init__(self, message: str, block: Optional[Tuple[int, int]] = None, mu: Optional[int] = None):
        super().__init__(message)
        self.block = block
        self.mu = mu


# ------------------------------------------------------------ blocks


def vandermonde_block(xi: ExactScalar, c: int, r: int, divided: bool = True) -> Matrix:
    """``c x r`` block: row k is the k-th y-derivative of ``(xi^(r-1), ..., xi, 1)``.

    Divided form scales row k by ``1/k!``, i.e. entries ``C(r-mu, k) xi^(r-mu-k)``.
    """
    if not 0 <= c <= r:
        raise ValueError(f"block height {c} must lie in 0..{r}")
    xi = scalar(xi)
    rows = []
    for k in range(c):
        scale = 1 if divided else factorial(k)
        row = []
        for mu in range(1, r + 1):
            e = r - mu
            row.append(xi ** (e - k) * (comb(e, k) * scale) if e >= k else ZERO)
        rows.append(row)
    return rows


def rhs_block(xi: ExactScalar, c: int, r: int, divided: bool = True) -> List[ExactScalar]:
    """Right-hand side: minus the k-th derivative of ``xi^r`` (divided by k! by default)."""
    if not 0 <= c <= r:
        raise ValueError(f"block height {c} must lie in 0..{r}")
    xi = scalar(xi)
    out = []
    for k in range(c):
        scale = 1 if divided else factorial(k)
        out.append(-(xi ** (r - k)) * (comb(r, k) * scale))
    return out


@dataclass(frozen=True)
class Block:
    a: int
    i: int
    A: Matrix
    B: List[ExactScalar]
    heights: Tuple[int, ...]
    values: Tuple[ExactScalar, ...]

    @property
    def c(self) -> int:
        return len(self.A)


@dataclass(frozen=True)
class ConstraintSystem:
    r: int
    pts: MarkedPoints
    data: ParabolicData
    distinct: DistinctPart
    blocks: Dict[Tuple[int, int], Block]

    @property
    def n(self) -> int:
        return self.pts.n

    def c(self, a: int, i: int) -> int:
        b = self.blocks.get((a, i))
        return b.c if b else 0

    def block_keys(self) -> List[Tuple[int, int]]:
        return sorted(self.blocks, key=lambda k: (k[1], k[0]))

    def row_count(self) -> int:
        return sum(b.c for b in self.blocks.values())


def point_block(values: Sequence[ExactScalar], subparts: Sequence[Partition], a: int, r: int,
                divided: bool = True) -> Tuple[Matrix, List[ExactScalar], Tuple[int, ...]]:
    """Stack the per-eigenvalue blocks of one point at Taylor order ``a``."""
    A: Matrix = []
    B: List[ExactScalar] = []
    heights = []
    for xi, p in zip(values, subparts):
        c = row_length(p, a)
        heights.append(c)
        if c == 0:
            continue
        A.extend(vandermonde_block(xi, c, r, divided))
        B.extend(rhs_block(xi, c, r, divided) if a == 0 else [ZERO] * c)
    return A, B, tuple(heights)


def build_constraints(data: ParabolicData, pts: MarkedPoints, divided: bool = True) -> ConstraintSystem:
    if data.n != pts.n:
        raise ValueError("number of marked points does not match the data")
    r = data.rank
    dp = distinct_part(data)
    blocks: Dict[Tuple[int, int], Block] = {}
    for i, pd in enumerate(dp.points):
        depth = max(p[0] for p in pd.subpartitions)
        for a in range(depth):
            A, B, heights = point_block(pd.values, pd.subpartitions, a, r, divided)
            blocks[(a, i)] = Block(a, i, A, B, heights, pd.values)
    return ConstraintSystem(r, pts, data, dp, blocks)


# ------------------------------------------------------------ pivots


@dataclass(frozen=True)
class PivotFreeDecomposition:
    pivot: frozenset
    free: frozenset
    t: Dict[Tuple[int, int], int]  # (mu, i) -> number of pivot a's

    def pivot_table(self, i: int, r: int) -> Dict[int, List[int]]:
        """``{a: [mu, ...]}`` pivot columns at point ``i``."""
        out: Dict[int, List[int]] = {}
        for mu, a, k in sorted(self.pivot):
            if k == i:
                out.setdefault(a, []).append(mu)
        return out


def pivot_free(sys: ConstraintSystem) -> PivotFreeDecomposition:
    r = sys.r
    pivot, free = set(), set()
    t: Dict[Tuple[int, int], int] = {(mu, i): 0 for mu in range(1, r + 1) for i in range(sys.n)}
    for (a, i), blk in sys.blocks.items():
        for mu in range(1, r + 1):
            if mu >= r - blk.c + 1:
                pivot.add((mu, a, i))
                t[(mu, i)] += 1
            else:
                free.add((mu, a, i))
    return PivotFreeDecomposition(frozenset(pivot), frozenset(free), t)


def solve_block(sys: ConstraintSystem, a: int, i: int,
                free_values: Optional[Dict[int, ExactScalar]] = None) -> Dict[int, ExactScalar]:
    """Pivot coordinates of block ``(a, i)`` from the free ones (``mu <= r - c``)."""
    blk = sys.blocks.get((a, i))
    if blk is None:
        return {}
    r, c = sys.r, blk.c
    piv_cols = list(range(r - c, r))
    free_cols = list(range(r - c))
    fv = free_values or {}
    rhs = list(blk.B)
    if a > 0 or c < r:
        for row_idx, row in enumerate(blk.A):
            acc = ZERO
            for col in free_cols:
                v = fv.get(col + 1, ZERO)
                if not v.is_zero():
                    acc = acc + row[col] * v
            rhs[row_idx] = rhs[row_idx] - acc
    try:
        sol = solve(submatrix_columns(blk.A, piv_cols), rhs)
    except SingularMatrixError:
        raise ConstraintError(
            f"block (a={a}, i={i}) is singular: eigenvalues at a point must be distinct", (a, i)
        ) from None
    return {col + 1: v for col, v in zip(piv_cols, sol)}


# ------------------------------------------------------------ Hermite lift


def taylor_row(k_max: int, p: ExactScalar, a: int) -> List[ExactScalar]:
    """Linear functional ``coeffs -> a-th Taylor coefficient at p`` on degree <= k_max."""
    return [p ** (k - a) * comb(k, a) if k >= a else ZERO for k in range(k_max + 1)]


def hermite_interpolant(pts: Sequence[ExactScalar], targets: Sequence[Sequence[ExactScalar]]) -> UniPoly:
    """Minimal-degree polynomial with prescribed Taylor coefficients ``targets[i][a]`` at ``pts[i]``."""
    total = sum(len(t) for t in targets)
    if total == 0:
        return UniPoly()
    rows, rhs = [], []
    for p, tgt in zip(pts, targets):
        for a, val in enumerate(tgt):
            rows.append(taylor_row(total - 1, scalar(p), a))
            rhs.append(scalar(val))
    return UniPoly(solve(rows, rhs))


def vanishing_multiplier(pts: Sequence[ExactScalar], orders: Sequence[int]) -> UniPoly:
    w = UniPoly([1])
    for p, t in zip(pts, orders):
        w = w * (UniPoly([-scalar(p), 1]) ** t)
    return w


def hermite_lift(mu: int, pts: MarkedPoints, targets: Sequence[Sequence[ExactScalar]],
                 extra: Optional[Sequence[ExactScalar]] = None) -> UniPoly:
    """Section of degree ``<= mu (n - 2)`` with the given Taylor coefficients.

    The minimal-degree interpolant is returned, plus ``W * h`` where ``W``
    vanishes to the prescribed orders and ``h`` has coefficients ``extra``.
    """
    n = pts.n
    d = mu * (n - 2)
    orders = [len(t) for t in targets]
    total = sum(orders)
    if mu == 1:
        if orders != [1] * n:
            raise ConstraintError("mu = 1 lift expects one value per point", mu=1)
        if compatibility_functional(pts, [t[0] for t in targets]):
            raise ConstraintError("mu = 1 values violate the residue compatibility", mu=1)
    elif total > d + 1:
        raise ConstraintError(f"order sum {total} exceeds {d + 1} for mu = {mu}", mu=mu)
    base = hermite_interpolant(list(pts), targets)
    if base.degree > d:
        raise ConstraintError(f"no section of degree <= {d} meets the targets", mu=mu)
    if extra:
        room = d - total
        if room < 0:
            raise ConstraintError("no freedom left for extra coefficients", mu=mu)
        h = UniPoly(list(extra)[: room + 1])
        base = base + vanishing_multiplier(list(pts), orders) * h
    return base


def compatibility_functional(pts: MarkedPoints, values: Sequence[ExactScalar]) -> ExactScalar:
    """``sum_i f_i / prod_{k != i}(p_i - p_k)``: the x^(n-1) coefficient of the Lagrange interpolant."""
    acc = ZERO
    for i, f in enumerate(values):
        acc = acc + scalar(f) * pts.residue_weight(i)
    return acc


# ------------------------------------------------------------ sections


@dataclass(frozen=True)
class SectionTuple:
    sections: Tuple[UniPoly, ...]
    n: int

    def __post_init__(self):
        for mu, s in enumerate(self.sections, start=1):
            if s.degree > mu * (self.n - 2):
                raise ValueError(f"s_{mu} has degree {s.degree} > {mu * (self.n - 2)}")

    @property
    def r(self) -> int:
        return len(self.sections)

    def __getitem__(self, mu: int) -> UniPoly:
        """1-based access: ``st[mu] = s_mu``."""
        return self.sections[mu - 1]

    def to_json(self) -> List[List[str]]:
        return [s.to_json() for s in self.sections]


@dataclass
class SectionConfig:
    """Free-value rule: zero by default, seeded small integers when ``seed`` is set."""

    seed: Optional[int] = None
    low: int = -4
    high: int = 4

    def draw(self, rng: Optional[random.Random], count: int) -> List[ExactScalar]:
        if rng is None or count <= 0:
            return []
        return [ExactScalar(rng.randint(self.low, self.high)) for _ in range(count)]


def construct_section(data: ParabolicData, pts: MarkedPoints,
                      config: Optional[SectionConfig] = None) -> SectionTuple:
    """Column-by-column induction: a=0 blocks, then mu = 1, 2, ..., r."""
    config = config or SectionConfig()
    if not residue_condition(data, pts):
        raise ConstraintError("residue condition fails", mu=1)
    if pts.n < 3:
        raise ConstraintError("genus-0 construction needs at least three marked points")
    sys = build_constraints(data, pts)
    r, n = sys.r, sys.n
    decomp = pivot_free(sys)
    rng = random.Random(config.seed) if config.seed is not None else None

    # pivot[(a, i)] = {mu: value}; a = 0 blocks are square and fully pivot
    pivots: Dict[Tuple[int, int], Dict[int, ExactScalar]] = {}
    for i in range(n):
        pivots[(0, i)] = solve_block(sys, 0, i)

    sections: List[UniPoly] = []
    for mu in range(1, r + 1):
        for (a, i), blk in sys.blocks.items():
            if a > 0 and (a, i) not in pivots and mu == r - blk.c + 1:
                free = {m: sections[m - 1].taylor(pts[i]).coeff(a) for m in range(1, mu)}
                pivots[(a, i)] = solve_block(sys, a, i, free)
        targets = []
        for i in range(n):
            t = decomp.t[(mu, i)]
            targets.append([pivots[(a, i)][mu] for a in range(t)])
        room = mu * (n - 2) - sum(len(t) for t in targets) + 1
        extra = config.draw(rng, room) if mu > 1 else None
        sections.append(hermite_lift(mu, pts, targets, extra))
    return SectionTuple(tuple(sections), n)


def section_coordinates(sections: SectionTuple, pts: MarkedPoints, a: int, i: int) -> List[ExactScalar]:
    return [sections[mu].taylor(pts[i]).coeff(a) for mu in range(1, sections.r + 1)]


def constraint_residuals(sys: ConstraintSystem, sections: SectionTuple) -> Dict[Tuple[int, int], List[ExactScalar]]:
    out = {}
    for (a, i), blk in sys.blocks.items():
        x = section_coordinates(sections, sys.pts, a, i)
        lhs = mat_vec(blk.A, x)
        out[(a, i)] = [l - b for l, b in zip(lhs, blk.B)]
    return out


def satisfies_constraints(sys: ConstraintSystem, sections: SectionTuple) -> bool:
    return all(v.is_zero() for res in constraint_residuals(sys, sections).values() for v in res)


# ------------------------------------------------------------ dimension


def coefficient_system(sys: ConstraintSystem) -> Tuple[Matrix, List[ExactScalar], List[Tuple[int, int]]]:
    """All block rows pulled back to the coefficients ``(mu, k)`` of the sections."""
    n, r = sys.n, sys.r
    cols = [(mu, k) for mu in range(1, r + 1) for k in range(mu * (n - 2) + 1)]
    index = {c: j for j, c in enumerate(cols)}
    rows, rhs = [], []
    for (a, i), blk in sorted(sys.blocks.items()):
        p = sys.pts[i]
        for row, b in zip(blk.A, blk.B):
            out = [ZERO] * len(cols)
            for mu in range(1, r + 1):
                coef = row[mu - 1]
                if coef.is_zero():
                    continue
                for k, tv in enumerate(taylor_row(mu * (n - 2), p, a)):
                    if not tv.is_zero():
                        j = index[(mu, k)]
                        out[j] = out[j] + coef * tv
            rows.append(out)
            rhs.append(b)
    return rows, rhs, cols


def solution_dimension(data: ParabolicData, pts: MarkedPoints) -> Optional[int]:
    """Dimension of the affine solution space, or ``None`` when it is empty."""
    sys = build_constraints(data, pts)
    rows, rhs, cols = coefficient_system(sys)
    if not rows:
        return len(cols)
    if solve_any(rows, rhs) is None:
        return None
    return len(cols) - rank(rows)
