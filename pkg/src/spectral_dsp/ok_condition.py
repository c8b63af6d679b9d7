"""Degrees of the twisted line bundles, the OK condition, controllability and
Simpson's numerical invariants."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Sequence

from .core_combinatorics import Partition, full_flag, level_function, partitions_of


@dataclass(frozen=True)
class CriterionRow:
    mu: int
    lhs: int
    rhs: int
    passed: bool

    def to_json(self) -> Dict:
        return {"mu": self.mu, "lhs": self.lhs, "rhs": self.rhs, "pass": self.passed}


@dataclass(frozen=True)
class CriterionReport:
    genus: int
    n: int
    rank: int
    case: str
    rows: tuple = ()
    passed: bool = True
    failing_mu: Optional[int] = None

    def to_json(self) -> Dict:
        return {
            "genus": self.genus,
            "n": self.n,
            "rank": self.rank,
            "case": self.case,
            "rows": [r.to_json() for r in self.rows],
            "pass": self.passed,
            "failing_mu": self.failing_mu,
        }


def _rank(partitions: Sequence[Partition]) -> int:
    sizes = {p.size for p in partitions}
    if len(sizes) != 1:
        raise ValueError("partitions must all have the same size")
    return sizes.pop()


def level_sum(partitions: Sequence[Partition], mu: int) -> int:
    return sum(level_function(p, mu) for p in partitions)


def deg_L(g: int, n: int, mu: int, partitions: Sequence[Partition]) -> int:
    """``mu (2g - 2 + n) - sum_i gamma_{P^i}(mu)``."""
    return mu * (2 * g - 2 + n) - level_sum(partitions, mu)


def ok_condition(g: int, n: int, partitions: Sequence[Partition]) -> CriterionReport:
    r = _rank(partitions)
    if len(partitions) != n:
        raise ValueError("need one partition per marked point")
    if g == 0:
        rows = []
        for mu in range(2, r + 1):
            lhs = level_sum(partitions, mu)
            rhs = (n - 2) * mu + 2
            rows.append(CriterionRow(mu, lhs, rhs, lhs < rhs))
        fail = next((row.mu for row in rows if not row.passed), None)
        return CriterionReport(0, n, r, "genus0-inequality", tuple(rows), fail is None, fail)
    if g == 1:
        # degenerate case: L_mu is trivial (= K_C) for some mu
        rows = []
        for mu in range(2, r + 1):
            lhs = level_sum(partitions, mu)
            degenerate = all(level_function(p, mu) == mu for p in partitions)
            rows.append(CriterionRow(mu, lhs, n * mu, not degenerate))
        fail = next((row.mu for row in rows if not row.passed), None)
        case = "genus1-exceptional" if fail is not None else "genus1"
        return CriterionReport(1, n, r, case, tuple(rows), fail is None, fail)
    return CriterionReport(g, n, r, "genus>=2", (), True, None)


def controllability_strict(g: int, deg: int, orders: Sequence[int]) -> bool:
    """Sufficient condition ``sum t < deg L - (2g - 2)``."""
    return sum(orders) < deg - (2 * g - 2)


def controllability(g: int, deg: int, orders: Sequence[int]) -> bool:
    """Jet surjectivity. Exact on the projective line (``deg - sum t >= -1``), else the strict form."""
    if g == 0:
        return deg - sum(orders) >= -1
    return controllability_strict(g, deg, orders)


# ------------------------------------------------------------ Simpson side


def simpson_invariants(p: Partition) -> tuple:
    """``(d, R)`` with ``d = r(r+1) - 2 sum gamma`` and ``R = r - gamma(r)``."""
    r = p.size
    d = r * (r + 1) - 2 * sum(p.levels)
    return d, r - level_function(p, r)


def _has_regular(partitions: Sequence[Partition]) -> bool:
    r = _rank(partitions)
    return any(p == full_flag(r) for p in partitions)


def simpson_criterion(partitions: Sequence[Partition], r: Optional[int] = None) -> bool:
    if r is None:
        r = _rank(partitions)
    if not _has_regular(partitions):
        raise ValueError("Simpson's criterion needs one class with distinct eigenvalues")
    inv = [simpson_invariants(p) for p in partitions]
    alpha = sum(d for d, _ in inv) >= 2 * r * r - 2
    total_r = sum(rr for _, rr in inv)
    beta = all(total_r - rr >= r for _, rr in inv)
    return alpha and beta


@dataclass(frozen=True)
class Equivalence:
    equivalent: bool
    ok_verdict: bool
    simpson_verdict: bool


def criteria_equivalence(partitions: Sequence[Partition], r: Optional[int] = None) -> Equivalence:
    ok = ok_condition(0, len(partitions), partitions).passed
    simpson = simpson_criterion(partitions, r)
    return Equivalence(ok == simpson, ok, simpson)


@dataclass(frozen=True)
class SweepSummary:
    max_rank: int
    points: tuple
    tuples: int
    agreements: int
    mismatches: tuple
    ok_true: int

    def to_json(self) -> Dict:
        return {
            "max_rank": self.max_rank,
            "points": list(self.points),
            "tuples": self.tuples,
            "agreements": self.agreements,
            "ok_true": self.ok_true,
            "mismatches": [[p.to_json() for p in tup] for tup in self.mismatches],
        }


def equivalence_sweep(max_rank: int = 6, points: Sequence[int] = (3, 4)) -> SweepSummary:
    """Every tuple with a regular class, ranks 2..max_rank: OK inequality vs Simpson."""
    total = agree = ok_true = 0
    bad: List[tuple] = []
    for r in range(2, max_rank + 1):
        parts = list(partitions_of(r))
        reg = full_flag(r)
        for n in points:
            for tup in product(parts, repeat=n):
                if reg not in tup:
                    continue
                eq = criteria_equivalence(tup, r)
                total += 1
                ok_true += eq.ok_verdict
                if eq.equivalent:
                    agree += 1
                else:
                    bad.append(tup)
    return SweepSummary(max_rank, tuple(points), total, agree, tuple(bad), ok_true)
