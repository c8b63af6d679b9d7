"""Marked points, the pair (m, xi), distinct parts, residue condition, genericity."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Mapping, Sequence, Set, Tuple

from .core_combinatorics import Partition
from .scalar_poly_kernel import ONE, ZERO, ExactScalar, scalar


@dataclass(frozen=True)
class MarkedPoints:
    points: Tuple[ExactScalar, ...]

    def __post_init__(self):
        pts = tuple(scalar(p) for p in self.points)
        if not pts:
            raise ValueError("need at least one marked point")
        if len(set(pts)) != len(pts):
            raise ValueError("marked points must be pairwise distinct")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> ExactScalar:
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    def residue_weight(self, i: int) -> ExactScalar:
        """``1 / prod_{k != i} (p_i - p_k)``: residue at ``p_i`` in the frame ``dx / prod(x - p_k)``."""
        prod = ONE
        for k, p in enumerate(self.points):
            if k != i:
                prod = prod * (self.points[i] - p)
        return prod.inverse()


@dataclass(frozen=True)
class PointData:
    """One marked point: multiplicities ``m`` (in input order) and eigenvalues ``xi``."""

    m: Tuple[int, ...]
    xi: Tuple[ExactScalar, ...]

    def __post_init__(self):
        m = tuple(int(k) for k in self.m)
        xi = tuple(scalar(c) for c in self.xi)
        if len(m) != len(xi):
            raise ValueError("multiplicity and eigenvalue lists differ in length")
        if any(k <= 0 for k in m):
            raise ValueError("multiplicities must be positive")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "xi", xi)

    @property
    def rank(self) -> int:
        return sum(self.m)

    @property
    def partition(self) -> Partition:
        return Partition.of(self.m)


@dataclass(frozen=True)
class ParabolicData:
    blocks: Tuple[PointData, ...]

    def __post_init__(self):
        blocks = tuple(self.blocks)
        if not blocks:
            raise ValueError("parabolic data needs at least one point")
        ranks = {b.rank for b in blocks}
        if len(ranks) != 1:
            raise ValueError(f"all points must have the same rank, got {sorted(ranks)}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def build(cls, spec: Sequence[Sequence[Tuple[int, object]]]) -> "ParabolicData":
        """``spec[i]`` is a list of ``(m, xi)`` pairs for point ``i``."""
        return cls(tuple(PointData(tuple(k for k, _ in row), tuple(x for _, x in row)) for row in spec))

    @property
    def n(self) -> int:
        return len(self.blocks)

    @property
    def rank(self) -> int:
        return self.blocks[0].rank

    def partitions(self) -> List[Partition]:
        return [b.partition for b in self.blocks]

    def scaled(self, lam: object) -> "ParabolicData":
        lam = scalar(lam)
        return ParabolicData(tuple(PointData(b.m, tuple(lam * x for x in b.xi)) for b in self.blocks))

    def to_json(self, pts: "MarkedPoints | None" = None) -> Dict:
        out: Dict = {}
        if pts is not None:
            out["points"] = [str(p) for p in pts]
        out["blocks"] = [[{"m": k, "xi": str(x)} for k, x in zip(b.m, b.xi)] for b in self.blocks]
        return out


@dataclass(frozen=True)
class PointDistinct:
    values: Tuple[ExactScalar, ...]
    subpartitions: Tuple[Partition, ...]


@dataclass(frozen=True)
class DistinctPart:
    points: Tuple[PointDistinct, ...]

    def centers(self):
        """Iterate ``(i, xi_circ, P^xi_circ)`` over all centers."""
        for i, pd in enumerate(self.points):
            for v, p in zip(pd.values, pd.subpartitions):
                yield i, v, p


def distinct_part(data: ParabolicData) -> DistinctPart:
    out = []
    for b in data.blocks:
        order: List[ExactScalar] = []
        groups: Dict[ExactScalar, List[int]] = {}
        for k, x in zip(b.m, b.xi):
            if x not in groups:
                order.append(x)
                groups[x] = []
            groups[x].append(k)
        out.append(PointDistinct(tuple(order), tuple(Partition.of(groups[x]) for x in order)))
    return DistinctPart(tuple(out))


def residue_sum(data: ParabolicData, pts: MarkedPoints) -> ExactScalar:
    if data.n != pts.n:
        raise ValueError("number of marked points does not match the data")
    total = ZERO
    for i, b in enumerate(data.blocks):
        w = pts.residue_weight(i)
        for k, x in zip(b.m, b.xi):
            total = total + w * x * k
    return total


def residue_condition(data: ParabolicData, pts: MarkedPoints) -> bool:
    """Multiplicity-weighted residues sum to zero."""
    return residue_sum(data, pts).is_zero()


# ------------------------------------------------------------ genericity


def _subset_values(row: Sequence[ExactScalar], m: int, combine, unit) -> Set[ExactScalar]:
    vals: Set[ExactScalar] = set()
    for idx in combinations(range(len(row)), m):
        acc = unit
        for k in idx:
            acc = combine(acc, row[k])
        vals.add(acc)
    return vals


def _hits(table: Sequence[Sequence[ExactScalar]], m: int, combine, unit, target) -> bool:
    """True if some choice of size-m index subsets (one per row) combines to ``target``."""
    reach: Set[ExactScalar] = {unit}
    for row in table:
        vals = _subset_values(row, m, combine, unit)
        reach = {combine(a, b) for a in reach for b in vals}
    return target in reach


def _sizes(table, proper: bool) -> range:
    n = len(table)
    r = len(table[0]) if table else 0
    top = min(n - 1, r)
    if proper:
        top = min(top, r - 1)
    return range(1, top + 1)


def _check_table(table) -> List[List[ExactScalar]]:
    t = [[scalar(c) for c in row] for row in table]
    if not t or len({len(row) for row in t}) != 1:
        raise ValueError("eigenvalue table must be a non-empty n x r array")
    return t


def is_multiplicatively_generic(table: Sequence[Sequence], *, proper: bool = False) -> bool:
    """No choice of equal-size index subsets (size m < n) has eigenvalue product 1.

    With ``proper=True`` the size is also capped at ``r - 1``; the full size
    ``m = r`` only repeats the determinant condition.
    """
    t = _check_table(table)
    if any(c.is_zero() for row in t for c in row):
        raise ValueError("eigenvalues must be nonzero")
    mul = lambda a, b: a * b
    return not any(_hits(t, m, mul, ONE, ONE) for m in _sizes(t, proper))


def is_additively_generic(table: Sequence[Sequence], *, proper: bool = False) -> bool:
    """Same enumeration with sums; a sum equal to zero breaks genericity."""
    t = _check_table(table)
    add = lambda a, b: a + b
    return not any(_hits(t, m, add, ZERO, ZERO) for m in _sizes(t, proper))


# ------------------------------------------------------------ JSON


def parse_parabolic_json(obj: Mapping) -> Tuple[ParabolicData, MarkedPoints]:
    if not isinstance(obj, Mapping) or "points" not in obj or "blocks" not in obj:
        raise ValueError("parabolic input needs 'points' and 'blocks'")
    pts = MarkedPoints(tuple(scalar(p) for p in obj["points"]))
    rows = []
    for row in obj["blocks"]:
        if not isinstance(row, list) or not row:
            raise ValueError("each point needs a non-empty block list")
        rows.append([(int(b["m"]), scalar(b["xi"])) for b in row])
    data = ParabolicData.build(rows)
    if data.n != pts.n:
        raise ValueError("number of points and number of block lists differ")
    return data, pts
