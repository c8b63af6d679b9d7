"""The curve ``Q = y^r + s_1 y^(r-1) + ... + s_r`` and its local conditions.

At a center with subpartition ``P = (m_1, ..., m_l)`` of size ``k`` three
conditions are checked independently:

1. multiplicity chain: the total transform ``F(u y^(j-1), y)`` has
   multiplicity ``>= m_1 + ... + m_j`` at the origin;
2. vanishing orders: after re-expanding around the center,
   ``ord_x s~_mu >= gamma_P(mu - (r - k))`` for the last ``k`` coefficients;
3. derivatives: ``d_y^u d_x^a Q`` vanishes at the center for ``(u, a)`` in ``G(P)``.

When ``k = r`` condition 2 is the usual ``v(mu) >= gamma(mu)``. For ``k < r``
the shift lines ``s~_mu y^(r-mu)`` up with the monomial ``y^u`` of condition 3.
"""

from __future__ import annotations

import random
from fractions import Fraction
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Sequence, Tuple, Union

from .core_combinatorics import Partition, level_domain, level_function, minimal_level_indices
from .scalar_poly_kernel import (
    INF,
    BiPoly,
    ExactScalar,
    UniPoly,
    poly_derivative,
    poly_eval,
    poly_substitute,
    scalar,
    squarefree_decomposition,
    translate,
)

Order = Union[int, float]


class LocalConditionMismatch(AssertionError):
    """The three local conditions disagreed: a bug or a misread convention."""


def assemble(sections) -> BiPoly:
    """``y^r + sum_mu s_mu(x) y^(r - mu)``."""
    secs = list(getattr(sections, "sections", sections))
    r = len(secs)
    terms: Dict[Tuple[int, int], ExactScalar] = {(0, r): ExactScalar(1)}
    for mu, s in enumerate(secs, start=1):
        for k, c in enumerate(s.coeffs):
            terms[(k, r - mu)] = c
    return BiPoly(terms)


def y_degree(q: BiPoly) -> int:
    return q.deg("y")


def coefficient_sections(q: BiPoly) -> List[UniPoly]:
    """``[s_1, ..., s_r]`` of a polynomial monic in y."""
    r = y_degree(q)
    groups = q.as_uni("y")
    if groups.get(r) != UniPoly([1]):
        raise ValueError("polynomial is not monic in y")
    return [groups.get(r - mu, UniPoly()) for mu in range(1, r + 1)]


def multiplicity_at(q: BiPoly, x0, y0) -> int:
    """Lowest total degree of the expansion at ``(x0, y0)``."""
    if q.is_zero():
        raise ValueError("zero polynomial has no multiplicity")
    return _low_degree(translate(q, x0, y0))


def _low_degree(p: BiPoly) -> Order:
    return min((a + b for a, b in p.terms), default=INF)


def total_transform_multiplicities(q: BiPoly, x0, y0, p: Partition) -> List[Order]:
    """Multiplicity at ``c_j`` of ``F_(j-1)(u, y) = F(u y^(j-1), y)`` for ``j = 1..l``."""
    f = translate(q, x0, y0)
    out: List[Order] = []
    uy = BiPoly({(1, 1): 1})
    for j in range(1, len(p) + 1):
        out.append(_low_degree(f))
        f = poly_substitute(f, uy, BiPoly.y())
    return out


def multiplicity_targets(p: Partition) -> List[int]:
    acc, out = 0, []
    for m in p:
        acc += m
        out.append(acc)
    return out


def condition_multiplicity(q: BiPoly, x0, y0, p: Partition) -> bool:
    chain = total_transform_multiplicities(q, x0, y0, p)
    return all(c >= t for c, t in zip(chain, multiplicity_targets(p)))


def vanishing_orders(q: BiPoly, x0, y0) -> List[Order]:
    """``v(mu) = ord_{x = x0} s~_mu`` after translating y by ``y0``; ``inf`` for zero."""
    f = translate(q, x0, y0)
    return [s.order_at(0) for s in coefficient_sections(f)]


def condition_vanishing(q: BiPoly, x0, y0, p: Partition) -> bool:
    r, k = y_degree(q), p.size
    v = vanishing_orders(q, x0, y0)
    shift = r - k
    return all(v[mu - 1] >= level_function(p, mu - shift) for mu in range(shift + 1, r + 1))


def derivative_vanishing(q: BiPoly, x0, y0, domain) -> Dict[Tuple[int, int], bool]:
    """Flag per ``(u, a)``: whether ``d_y^u d_x^a q`` vanishes at ``(x0, y0)``."""
    pts = domain.points if hasattr(domain, "points") else domain
    out = {}
    for u, a in sorted(pts):
        d = poly_derivative(poly_derivative(q, "y", u), "x", a)
        out[(u, a)] = poly_eval(d, x0, y0).is_zero()
    return out


def condition_derivatives(q: BiPoly, x0, y0, p: Partition) -> bool:
    return all(derivative_vanishing(q, x0, y0, level_domain(p)).values())


@dataclass(frozen=True)
class LocalVerdict:
    multiplicity: bool
    vanishing: bool
    derivatives: bool

    @property
    def agree(self) -> bool:
        return self.multiplicity == self.vanishing == self.derivatives


def local_conditions(q: BiPoly, x0, y0, p: Partition) -> LocalVerdict:
    return LocalVerdict(
        condition_multiplicity(q, x0, y0, p),
        condition_vanishing(q, x0, y0, p),
        condition_derivatives(q, x0, y0, p),
    )


def check_equivalence(q: BiPoly, x0, y0, p: Partition) -> bool:
    verdict = local_conditions(q, x0, y0, p)
    if not verdict.agree:
        raise LocalConditionMismatch(f"local conditions disagree at ({x0}, {y0}) for {p}: {verdict}")
    return verdict.multiplicity


def check_exact_multiplicity(q: BiPoly, x0, y0, p: Partition) -> bool:
    """All derivatives at the minimal level indices are nonzero."""
    _, g_min = minimal_level_indices(p)
    flags = derivative_vanishing(q, x0, y0, g_min)
    return not any(flags.values())


def exact_chain(q: BiPoly, x0, y0, p: Partition) -> bool:
    """Multiplicity chain attains its lower bounds exactly."""
    return total_transform_multiplicities(q, x0, y0, p) == multiplicity_targets(p)


# ------------------------------------------------------------ integrality

CERT_INTEGRAL = "certified_integral"
CERT_NONINTEGRAL = "certified_nonintegral"
CERT_INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class IntegralityCertificate:
    verdict: str
    mode: str
    evidence: Dict = field(default_factory=dict)

    def to_json(self) -> Dict:
        return {"verdict": self.verdict, "mode": self.mode, "evidence": self.evidence}


def is_cyclic(q: BiPoly) -> bool:
    return all(s.is_zero() for s in coefficient_sections(q)[:-1])


def cyclic_certificate(q: BiPoly) -> IntegralityCertificate:
    """``y^r + s_r`` is integral iff no prime ``d | r`` divides every root multiplicity of ``s_r``."""
    r = y_degree(q)
    if not is_cyclic(q):
        raise ValueError("cyclic certificate needs s_1 = ... = s_(r-1) = 0")
    s_r = coefficient_sections(q)[-1]
    if s_r.is_zero():
        verdict = CERT_INTEGRAL if r == 1 else CERT_NONINTEGRAL
        return IntegralityCertificate(verdict, "cyclic", {"s_r": "0"})
    # root multiplicity k occurs for deg(f) roots
    sqf = squarefree_decomposition(s_r)
    common = r
    for _, k in sqf:
        common = gcd(common, k)
    verdict = CERT_INTEGRAL if common == 1 else CERT_NONINTEGRAL
    mults = sorted(k for f, k in sqf for _ in range(f.degree))
    return IntegralityCertificate(verdict, "cyclic", {"root_multiplicities": mults, "gcd_with_rank": common})


def _to_sympy(q: BiPoly):
    import sympy as sp

    x, y = sp.symbols("x y")
    expr = sum(
        (sp.Rational(c.re.numerator, c.re.denominator) + sp.I * sp.Rational(c.im.numerator, c.im.denominator))
        * x ** a * y ** b
        for (a, b), c in sorted(q.terms.items())
    )
    return sp.Poly(expr, x, y, domain="QQ_I"), x, y


def _from_sympy_scalar(v) -> ExactScalar:
    import sympy as sp

    re, im = sp.re(v), sp.im(v)
    return ExactScalar(Fraction(int(sp.numer(re)), int(sp.denom(re))),
                       Fraction(int(sp.numer(im)), int(sp.denom(im))))


def _subset_sums(degrees: Sequence[int]) -> set:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


def probabilistic_certificate(q: BiPoly, k: int = 8, seed: int = 0) -> IntegralityCertificate:
    """Squarefree test, specialization patterns, then a smooth rational point.

    Patterns bound the possible y-degrees of a factor over Q(i). Irreducibility
    over Q(i) plus a smooth Q(i)-point forces absolute irreducibility, since the
    geometric components are Galois conjugate and would all pass through it.
    """
    import sympy as sp

    r = y_degree(q)
    poly, x, y = _to_sympy(q)
    dq = poly.diff(y)
    g = sp.gcd(poly, dq)
    if g.degree(y) > 0:
        return IntegralityCertificate(CERT_NONINTEGRAL, "probabilistic",
                                      {"repeated_factor": str(g.as_expr())})
    rng = random.Random(seed)
    possible = set(range(r + 1))
    patterns = []
    rational_points: List[Tuple[ExactScalar, ExactScalar]] = []
    tried = 0
    x0s: List[int] = []
    while len(x0s) < k and tried < 20 * k:
        tried += 1
        x0 = rng.randint(-50, 50)
        if x0 in x0s:
            continue
        spec = sp.Poly(poly.as_expr().subs(x, x0), y, domain="QQ_I")
        if sp.gcd(spec, spec.diff(y)).degree() > 0:
            continue
        x0s.append(x0)
        _, facs = sp.factor_list(spec)
        degs = sorted(f.degree() for f, _ in facs)
        patterns.append(degs)
        possible &= _subset_sums(degs)
        for f, _ in facs:
            if f.degree() == 1:
                cs = f.all_coeffs()
                rational_points.append((ExactScalar(x0), _from_sympy_scalar(-cs[1] / cs[0])))
    evidence: Dict = {"x0": x0s, "patterns": patterns}
    if possible - {0, r}:
        _, facs = sp.factor_list(poly)
        nontrivial = [f for f, _ in facs if f.degree(y) > 0]
        if len(nontrivial) > 1 or any(m > 1 for _, m in facs):
            evidence["factors"] = [str(f.as_expr()) for f, _ in facs]
            return IntegralityCertificate(CERT_NONINTEGRAL, "probabilistic", evidence)
        return IntegralityCertificate(CERT_INCONCLUSIVE, "probabilistic", evidence)
    evidence["irreducible_over_Qi"] = True
    qx, qy = poly_derivative(q, "x"), poly_derivative(q, "y")
    for px, py in rational_points:
        if not (poly_eval(qx, px, py).is_zero() and poly_eval(qy, px, py).is_zero()):
            evidence["smooth_point"] = [str(px), str(py)]
            return IntegralityCertificate(CERT_INTEGRAL, "probabilistic", evidence)
    evidence["note"] = "irreducible over Q(i); no smooth rational point found"
    return IntegralityCertificate(CERT_INCONCLUSIVE, "probabilistic", evidence)


def integrality_certificate(q: BiPoly, mode: str = "auto", k: int = 8, seed: int = 0,
                            smooth_points: Sequence[Tuple[ExactScalar, ExactScalar]] = ()) -> IntegralityCertificate:
    """``mode``: ``cyclic``, ``probabilistic`` or ``auto`` (cyclic when applicable).

    ``smooth_points`` may supply known Q(i)-points to test for smoothness first.
    """
    if mode == "cyclic" or (mode == "auto" and is_cyclic(q)):
        return cyclic_certificate(q)
    if mode not in ("auto", "probabilistic"):
        raise ValueError(f"unknown certificate mode {mode!r}")
    cert = probabilistic_certificate(q, k, seed)
    if cert.verdict == CERT_INCONCLUSIVE and cert.evidence.get("irreducible_over_Qi"):
        qx, qy = poly_derivative(q, "x"), poly_derivative(q, "y")
        for px, py in smooth_points:
            if poly_eval(q, px, py).is_zero() and not (
                poly_eval(qx, px, py).is_zero() and poly_eval(qy, px, py).is_zero()
            ):
                ev = dict(cert.evidence)
                ev.pop("note", None)
                ev["smooth_point"] = [str(px), str(py)]
                return IntegralityCertificate(CERT_INTEGRAL, "probabilistic", ev)
    return cert


# ------------------------------------------------------------ ledgers


def _order_json(v: Order):
    return "inf" if v == INF else int(v)


@dataclass(frozen=True)
class CenterLedger:
    point: int
    x0: ExactScalar
    xi: ExactScalar
    subpartition: Partition
    chain: Tuple[Order, ...]
    chain_targets: Tuple[int, ...]
    orders: Tuple[Order, ...]
    derivatives: Tuple[Tuple[Tuple[int, int], bool], ...]
    verdict: LocalVerdict
    exact: bool
    exact_chain: bool

    def to_json(self) -> Dict:
        return {
            "point": self.point,
            "x": str(self.x0),
            "xi": str(self.xi),
            "subpartition": self.subpartition.to_json(),
            "multiplicity_chain": [_order_json(c) for c in self.chain],
            "chain_targets": list(self.chain_targets),
            "vanishing_orders": [_order_json(v) for v in self.orders],
            "derivatives_vanish": [[u, a, flag] for (u, a), flag in self.derivatives],
            "conditions": {
                "multiplicity": self.verdict.multiplicity,
                "vanishing": self.verdict.vanishing,
                "derivatives": self.verdict.derivatives,
            },
            "exact_multiplicity": self.exact,
            "exact_chain": self.exact_chain,
        }


def center_ledger(q: BiPoly, point: int, x0, xi, p: Partition) -> CenterLedger:
    """Evaluate every local check at one center; raises if the three conditions disagree."""
    check_equivalence(q, x0, xi, p)
    return CenterLedger(
        point,
        scalar(x0),
        scalar(xi),
        p,
        tuple(total_transform_multiplicities(q, x0, xi, p)),
        tuple(multiplicity_targets(p)),
        tuple(vanishing_orders(q, x0, xi)),
        tuple(derivative_vanishing(q, x0, xi, level_domain(p)).items()),
        local_conditions(q, x0, xi, p),
        check_exact_multiplicity(q, x0, xi, p),
        exact_chain(q, x0, xi, p),
    )


@dataclass(frozen=True)
class SpectralWitness:
    pts: object
    data: object
    sections: object
    Q: BiPoly
    ledger: Tuple[CenterLedger, ...]
    integrality: IntegralityCertificate

    def to_json(self) -> Dict:
        return {
            "points": [str(p) for p in self.pts],
            "data": self.data.to_json(),
            "sections": self.sections.to_json(),
            "Q": self.Q.to_json(),
            "centers": [c.to_json() for c in self.ledger],
            "integrality": self.integrality.to_json(),
        }
