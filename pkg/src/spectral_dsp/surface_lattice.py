"""Numerical lattice of the iterated blow-up of the ruled surface.

Basis: ``C0`` (pullback of the zero section), ``F`` (pullback of a fiber)
and the exceptional classes ``Xi[i, j]``. Pairings:

    C0.C0 = 2g - 2 + n,  C0.F = 1,  F.F = 0,
    Xi.C0 = Xi.F = 0,    Xi[i,j].Xi[k,l] = -delta.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .core_combinatorics import Partition, level_function
from .exact_linalg import as_matrix, rank, solve_any

ExcIndex = Tuple[int, int]


@dataclass(frozen=True)
class LatticeShape:
    """Genus, and the number of exceptional curves above each marked point."""

    g: int
    lengths: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.lengths)

    @property
    def c0_square(self) -> int:
        return 2 * self.g - 2 + self.n

    def indices(self) -> List[ExcIndex]:
        return [(i, j) for i, l in enumerate(self.lengths) for j in range(l)]


@dataclass(frozen=True)
class DivisorClass:
    a: int = 0
    b: int = 0
    exc: Tuple[Tuple[ExcIndex, int], ...] = ()

    @classmethod
    def make(cls, a: int = 0, b: int = 0, exc: Dict[ExcIndex, int] | None = None) -> "DivisorClass":
        return cls(a, b, tuple(sorted((k, v) for k, v in (exc or {}).items() if v)))

    @property
    def exc_map(self) -> Dict[ExcIndex, int]:
        return dict(self.exc)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        e = self.exc_map
        for k, v in other.exc:
            e[k] = e.get(k, 0) + v
        return DivisorClass.make(self.a + other.a, self.b + other.b, e)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass.make(-self.a, -self.b, {k: -v for k, v in self.exc})

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __rmul__(self, k: int) -> "DivisorClass":
        return DivisorClass.make(k * self.a, k * self.b, {i: k * v for i, v in self.exc})

    def to_json(self) -> Dict:
        return {"C0": self.a, "fiber": self.b, "exc": [[i, j, v] for (i, j), v in self.exc]}


def zero_section() -> DivisorClass:
    return DivisorClass.make(a=1)


def fiber() -> DivisorClass:
    return DivisorClass.make(b=1)


def exceptional(i: int, j: int) -> DivisorClass:
    return DivisorClass.make(exc={(i, j): 1})


def fiber_strict(shape: LatticeShape, i: int) -> DivisorClass:
    """``F_i = fiber - sum_j Xi[i, j]``."""
    return fiber() - DivisorClass.make(exc={(i, j): 1 for j in range(shape.lengths[i])})


def infinity_section(shape: LatticeShape) -> DivisorClass:
    """``C_inf = C0 - (2g - 2 + n) fiber``; the centers avoid it, so it equals its strict transform."""
    return DivisorClass.make(a=1, b=-shape.c0_square)


def _check(shape: LatticeShape, d: DivisorClass) -> None:
    for (i, j), _ in d.exc:
        if not (0 <= i < shape.n and 0 <= j < shape.lengths[i]):
            raise ValueError(f"exceptional index {(i, j)} not in lattice of shape {shape.lengths}")


def intersect(x: DivisorClass, y: DivisorClass, shape: LatticeShape) -> int:
    _check(shape, x)
    _check(shape, y)
    val = x.a * y.a * shape.c0_square + x.a * y.b + x.b * y.a
    ye = y.exc_map
    for k, v in x.exc:
        val -= v * ye.get(k, 0)
    return val


def solve_curve_class(partitions: Sequence[Partition], g: int = 0) -> DivisorClass:
    """The unique class with ``.C_inf = 0``, ``.F_i = 0`` and ``.Xi[i,j] = m_ij``.

    Solved as a linear system on the coordinates ``(a, b, exc)``; uniqueness is
    checked by the rank of the system.
    """
    parts = [p if isinstance(p, Partition) else Partition.of(p) for p in partitions]
    ranks = {p.size for p in parts}
    if len(ranks) != 1:
        raise ValueError("all partitions must have the same size")
    shape = LatticeShape(g, tuple(len(p) for p in parts))
    idx = shape.indices()
    basis = [zero_section(), fiber()] + [exceptional(i, j) for i, j in idx]
    tests = [infinity_section(shape)] + [fiber_strict(shape, i) for i in range(shape.n)]
    tests += [exceptional(i, j) for i, j in idx]
    rhs = [0] * (1 + shape.n) + [parts[i][j] for i, j in idx]
    mat = as_matrix([[intersect(bv, t, shape) for bv in basis] for t in tests])
    if rank(mat) != len(basis):
        raise ArithmeticError("curve class is not uniquely determined")
    sol = solve_any(mat, rhs)
    if sol is None:
        raise ArithmeticError("curve class conditions are inconsistent")
    coords = []
    for c in sol:
        if c.im or c.re.denominator != 1:
            raise ArithmeticError("curve class is not integral")
        coords.append(int(c.re))
    return DivisorClass.make(coords[0], coords[1], {k: v for k, v in zip(idx, coords[2:])})


def canonical_class(lengths: Sequence[int], g: int = 0) -> DivisorClass:
    """``K = -sum_i F_i - 2 C_inf``; cross-checked against ``-n fiber - 2 C_inf + sum Xi``."""
    shape = LatticeShape(g, tuple(lengths))
    k1 = DivisorClass()
    for i in range(shape.n):
        k1 = k1 - fiber_strict(shape, i)
    k1 = k1 - 2 * infinity_section(shape)
    k2 = (-shape.n) * fiber() - 2 * infinity_section(shape)
    k2 = k2 + DivisorClass.make(exc={ij: 1 for ij in shape.indices()})
    if k1 != k2:
        raise ArithmeticError("canonical class expressions disagree")
    return k1


def expected_dimension(g: int, n: int, r: int, partitions: Sequence[Partition]) -> int:
    sq = sum(m * m for p in partitions for m in p)
    num = n * r * r - sq
    if num % 2:
        raise ArithmeticError("n r^2 - sum m^2 is odd")
    return 1 + r * r * (g - 1) + num // 2


def strongly_parabolic_dimension(g: int, n: int, r: int, partitions: Sequence[Partition]) -> int:
    levels = sum(level_function(p, mu) for p in partitions for mu in range(1, r + 1))
    return 1 + r * r * (g - 1) + n * r * (r + 1) // 2 - levels
