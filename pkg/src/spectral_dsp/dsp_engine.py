"""Deligne-Simpson verdicts from conjugacy-class data and the witness pipeline.

The verdict is a sufficient criterion: a failed check yields
``criterion-failed``, never a claim of unsolvability.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .core_combinatorics import Partition, conjugate, single_row, union
from .linear_system import (
    SectionConfig,
    build_constraints,
    construct_section,
    satisfies_constraints,
)
from .local_jordan import DegenerateChartError, JordanReport, residue_jordan_type
from .ok_condition import CriterionReport, ok_condition
from .parabolic_data import (
    MarkedPoints,
    ParabolicData,
    distinct_part,
    is_multiplicatively_generic,
    residue_condition,
)
from .scalar_poly_kernel import ONE, ExactScalar, scalar
from .spectral_curve import (
    CERT_INTEGRAL,
    SpectralWitness,
    assemble,
    center_ledger,
    integrality_certificate,
)

SOLVABLE = "solvable"
CRITERION_FAILED = "criterion-failed"


@dataclass(frozen=True)
class ConjugacyClass:
    """Eigenvalues with the Jordan block sizes attached to each."""

    eigen: Tuple[Tuple[ExactScalar, Partition], ...]

    def __post_init__(self):
        eigen = tuple((scalar(l), p if isinstance(p, Partition) else Partition.of(p)) for l, p in self.eigen)
        if not eigen:
            raise ValueError("a conjugacy class needs at least one eigenvalue")
        lams = [l for l, _ in eigen]
        if len(set(lams)) != len(lams):
            raise ValueError("eigenvalues within a class must be distinct")
        if any(l.is_zero() for l in lams):
            raise ValueError("eigenvalues must be nonzero")
        if any(p.size == 0 for _, p in eigen):
            raise ValueError("each eigenvalue needs a non-empty block partition")
        object.__setattr__(self, "eigen", eigen)

    @property
    def rank(self) -> int:
        return sum(p.size for _, p in self.eigen)

    def determinant(self) -> ExactScalar:
        d = ONE
        for lam, p in self.eigen:
            d = d * lam ** p.size
        return d

    def eigenvalue_row(self) -> List[ExactScalar]:
        return [lam for lam, p in self.eigen for _ in range(p.size)]


def _common_rank(classes: Sequence[ConjugacyClass]) -> int:
    if not classes:
        raise ValueError("need at least one conjugacy class")
    ranks = {c.rank for c in classes}
    if len(ranks) != 1:
        raise ValueError(f"conjugacy classes have different ranks {sorted(ranks)}")
    return ranks.pop()


def parabolic_type(classes: Sequence[ConjugacyClass]) -> List[Partition]:
    """Per class, the union of the conjugates of the eigenvalue partitions."""
    _common_rank(classes)
    out = []
    for c in classes:
        p = Partition()
        for _, q in c.eigen:
            p = union(p, conjugate(q))
        out.append(p)
    return out


@dataclass(frozen=True)
class DSPVerdict:
    genus: int
    rank: int
    partitions: Tuple[Partition, ...]
    det_product: ExactScalar
    det_ok: bool
    generic_ok: bool
    inequality: CriterionReport
    genus_ok: bool
    genus_note: str
    witness_existence: Optional[bool] = None
    failed: Tuple[str, ...] = ()

    @property
    def verdict(self) -> str:
        return SOLVABLE if not self.failed else CRITERION_FAILED

    def to_json(self) -> Dict:
        out = {
            "verdict": self.verdict,
            "genus": self.genus,
            "rank": self.rank,
            "n": len(self.partitions),
            "parabolic_type": [p.to_json() for p in self.partitions],
            "checks": {
                "det": {"product": str(self.det_product), "pass": self.det_ok},
                "multiplicative_generic": {"pass": self.generic_ok},
                "inequality": self.inequality.to_json(),
                "genus_condition": {"pass": self.genus_ok, "note": self.genus_note},
            },
            "failed_checks": list(self.failed),
        }
        if self.witness_existence is not None:
            out["checks"]["genus1_witness_existence"] = {"pass": self.witness_existence}
        return out


def dsp_verdict(classes: Sequence[ConjugacyClass], g: int) -> DSPVerdict:
    r = _common_rank(classes)
    n = len(classes)
    if g < 0:
        raise ValueError("genus must be nonnegative")
    if g == 0 and n < 3:
        raise ValueError("genus 0 needs at least three conjugacy classes")
    parts = parabolic_type(classes)
    det = ONE
    for c in classes:
        det = det * c.determinant()
    det_ok = det == ONE
    # subsets of size r only repeat the determinant condition
    generic_ok = is_multiplicatively_generic([c.eigenvalue_row() for c in classes], proper=True)
    report = ok_condition(g, n, parts)
    witness_existence = None
    if g == 0:
        genus_ok, note = report.passed, "sum of levels below (n-2)mu + 2 for all mu"
    elif g == 1:
        non_single = sum(1 for p in parts if p != single_row(r))
        genus_ok = non_single >= 1
        note = "at least one parabolic type differs from the single row"
        witness_existence = non_single >= 2
    else:
        genus_ok, note = True, "no partition condition in genus >= 2"
    failed = []
    if not det_ok:
        failed.append("det")
    if not generic_ok:
        failed.append("multiplicative_generic")
    if g == 0 and not report.passed:
        failed.append(f"inequality(mu={report.failing_mu})")
    if g == 1 and not genus_ok:
        failed.append("genus1_single_row")
    return DSPVerdict(g, r, tuple(parts), det, det_ok, generic_ok, report, genus_ok, note,
                      witness_existence, tuple(failed))


# ------------------------------------------------------------ witnesses


class WitnessError(RuntimeError):
    def __init__(self, message: str, detail: Optional[Dict] = None):
        super().__init__(message)
        self.detail = detail or {}


@dataclass
class WitnessConfig:
    seed: int = 0
    retries: int = 8
    certificate_points: int = 8


@dataclass(frozen=True)
class WitnessResult:
    witness: SpectralWitness
    jordan: Tuple[Tuple[int, ExactScalar, JordanReport], ...]
    seed_used: int
    attempts: int

    @property
    def verified(self) -> bool:
        return (
            all(c.verdict.derivatives and c.exact for c in self.witness.ledger)
            and all(j.ok for _, _, j in self.jordan)
            and self.witness.integrality.verdict == CERT_INTEGRAL
        )

    def point_jordan_types(self) -> Dict[int, Partition]:
        """Per marked point, the union of the per-eigenvalue Jordan types."""
        out: Dict[int, Partition] = {}
        for i, _, rep in self.jordan:
            out[i] = union(out.get(i, Partition()), rep.jordan)
        return out

    def to_json(self) -> Dict:
        return {
            "seed_used": self.seed_used,
            "attempts": self.attempts,
            "verified": self.verified,
            "witness": self.witness.to_json(),
            "jordan": [
                {"point": i, "xi": str(xi), **rep.to_json()} for i, xi, rep in self.jordan
            ],
            "point_jordan_types": {str(i): p.to_json() for i, p in sorted(self.point_jordan_types().items())},
        }


def higgs_witness(data: ParabolicData, pts: MarkedPoints, config: Optional[WitnessConfig] = None) -> WitnessResult:
    """Section -> curve -> local ledger -> integrality -> Jordan types, re-seeding on degeneracy."""
    cfg = config or WitnessConfig()
    if data.n != pts.n:
        raise ValueError("number of marked points does not match the data")
    if pts.n < 3:
        raise WitnessError("genus-0 witnesses need at least three marked points")
    if not residue_condition(data, pts):
        raise WitnessError("residue condition fails", {"check": "residue"})
    report = ok_condition(0, pts.n, data.partitions())
    if not report.passed:
        raise WitnessError(f"OK condition fails at mu={report.failing_mu}",
                           {"check": "ok_condition", "mu": report.failing_mu, "report": report.to_json()})
    sys = build_constraints(data, pts)
    centers = list(distinct_part(data).centers())
    reasons: List[str] = []
    for attempt in range(cfg.retries + 1):
        seed = cfg.seed + attempt
        sections = construct_section(data, pts, SectionConfig(seed=seed))
        if not satisfies_constraints(sys, sections):
            raise AssertionError("constructed section violates the constraint system")
        q = assemble(sections)
        ledger = tuple(center_ledger(q, i, pts[i], xi, p) for i, xi, p in centers)
        if not all(c.verdict.derivatives for c in ledger):
            raise AssertionError("constructed section fails a local derivative condition")
        if not all(c.exact for c in ledger):
            reasons.append(f"seed {seed}: multiplicity not exact")
            continue
        try:
            jordan = tuple((i, xi, residue_jordan_type(q, pts[i], xi, p)) for i, xi, p in centers)
        except DegenerateChartError as exc:
            reasons.append(f"seed {seed}: {exc}")
            continue
        bad = [(i, str(xi)) for i, xi, rep in jordan if not rep.ok]
        if bad:
            raise AssertionError(f"Jordan type differs from the conjugate partition at {bad}")
        cert = integrality_certificate(q, k=cfg.certificate_points, seed=seed,
                                       smooth_points=[(pts[i], xi) for i, xi, _ in centers])
        if cert.verdict != CERT_INTEGRAL:
            reasons.append(f"seed {seed}: integrality {cert.verdict}")
            continue
        witness = SpectralWitness(pts, data, sections, q, ledger, cert)
        return WitnessResult(witness, jordan, seed, attempt + 1)
    raise WitnessError("retries exhausted without a verified witness", {"attempts": reasons})


# ------------------------------------------------------------ JSON


def parse_class_spec(obj: Mapping) -> Tuple[List[ConjugacyClass], int]:
    if not isinstance(obj, Mapping) or "classes" not in obj:
        raise ValueError("class spec needs a 'classes' list")
    classes = []
    for cls in obj["classes"]:
        if not isinstance(cls, list):
            raise ValueError("each class is a list of eigenvalue entries")
        classes.append(ConjugacyClass(tuple((scalar(e["lambda"]), Partition.of(e["blocks"])) for e in cls)))
    g = int(obj.get("genus", 0))
    return classes, g
