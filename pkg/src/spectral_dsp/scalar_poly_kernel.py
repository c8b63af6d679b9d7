"""Exact Gaussian-rational scalars and small uni/bivariate polynomials.

Everything here is exact. ``ExactScalar`` is a + b*i with ``Fraction`` parts,
``UniPoly`` is a dense coefficient list (lowest degree first) and ``BiPoly``
is a sparse map ``(deg_x, deg_y) -> ExactScalar``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple, Union

ScalarLike = Union["ExactScalar", int, Fraction, str]

_COMPLEX_RE = re.compile(
    r"^\s*(?P<re>[+-]?\d+(?:/\d+)?)?\s*(?:(?P<sign>[+-])\s*(?P<im>\d+(?:/\d+)?)?\s*\*?\s*i)?\s*$"
)


class ExactScalar:
    """Gaussian rational ``re + im*i``. Immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction] = 0, im: Union[int, Fraction] = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    @classmethod
    def coerce(cls, value: ScalarLike) -> "ExactScalar":
        if isinstance(value, ExactScalar):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a scalar")
        if isinstance(value, (int, Fraction)):
            return cls(value, 0)
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, (list, tuple)) and len(value) == 2:
            return cls(Fraction(value[0]), Fraction(value[1]))
        if isinstance(value, dict) and "re" in value:
            return cls(Fraction(value["re"]), Fraction(value.get("im", 0)))
        raise TypeError(f"cannot interpret {value!r} as an exact scalar")

    @classmethod
    def parse(cls, text: str) -> "ExactScalar":
        """Parse strings like ``"3/2"``, ``"-1+2i"``, ``"1/3-5/7i"``, ``"i"``."""
        s = text.replace(" ", "")
        if s in ("i", "+i"):
            return cls(0, 1)
        if s == "-i":
            return cls(0, -1)
        if s.endswith("i") and re.fullmatch(r"[+-]?\d+(?:/\d+)?\*?i", s):
            return cls(0, Fraction(s.rstrip("i").rstrip("*")))
        m = _COMPLEX_RE.match(s)
        if not m or (m.group("re") is None and m.group("sign") is None):
            raise ValueError(f"malformed scalar {text!r}")
        real = Fraction(m.group("re")) if m.group("re") else Fraction(0)
        imag = Fraction(0)
        if m.group("sign"):
            mag = Fraction(m.group("im")) if m.group("im") else Fraction(1)
            imag = mag if m.group("sign") == "+" else -mag
        return cls(real, imag)

    # arithmetic
    def __add__(self, other: ScalarLike) -> "ExactScalar":
        o = _co(other)
        if o is NotImplemented:
            return NotImplemented
        return ExactScalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> "ExactScalar":
        o = _co(other)
        if o is NotImplemented:
            return NotImplemented
        return ExactScalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: ScalarLike) -> "ExactScalar":
        o = _co(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other: ScalarLike) -> "ExactScalar":
        o = _co(other)
        if o is NotImplemented:
            return NotImplemented
        if not self.im and not o.im:
            return ExactScalar(self.re * o.re, 0)
        return ExactScalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "ExactScalar":
        o = _co(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: ScalarLike) -> "ExactScalar":
        o = _co(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.re, -self.im)

    def __pos__(self) -> "ExactScalar":
        return self

    def __pow__(self, k: int) -> "ExactScalar":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "ExactScalar":
        norm = self.re * self.re + self.im * self.im
        if norm == 0:
            raise ZeroDivisionError("inverse of zero scalar")
        return ExactScalar(self.re / norm, -self.im / norm)

    def conjugate(self) -> "ExactScalar":
        return ExactScalar(self.re, -self.im)

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        o = _co(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"ExactScalar({self})"

    def __str__(self) -> str:
        if not self.im:
            return _frac_str(self.re)
        if not self.re:
            return _frac_str(self.im) + "i"
        sign = "+" if self.im > 0 else "-"
        return f"{_frac_str(self.re)}{sign}{_frac_str(abs(self.im))}i"

    def to_json(self) -> str:
        return str(self)


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _co(value):
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return ExactScalar(value, 0)
    return NotImplemented


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
I = ExactScalar(0, 1)


def scalar(value: ScalarLike) -> ExactScalar:
    return ExactScalar.coerce(value)


# ---------------------------------------------------------------- UniPoly


class UniPoly:
    """Dense univariate polynomial, lowest degree first, trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[ScalarLike] = ()):
        cs = [scalar(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def monomial(cls, k: int, c: ScalarLike = 1) -> "UniPoly":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[ScalarLike]) -> "UniPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-scalar(r), 1])
        return p

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> ExactScalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def lead(self) -> ExactScalar:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __call__(self, x0: ScalarLike) -> ExactScalar:
        x0 = scalar(x0)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        return acc

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.coeff(k) + other.coeff(k) for k in range(n))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.coeff(k) - other.coeff(k) for k in range(n))

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = scalar(other)
            return UniPoly(a * c for a in self.coeffs)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        out = UniPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def divmod(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [ZERO] * max(0, len(rem) - len(other.coeffs) + 1)
        inv = other.lead().inverse()
        d = other.degree
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k] * inv
            if c.is_zero():
                continue
            q[k - d] = c
            for t, b in enumerate(other.coeffs):
                rem[k - d + t] = rem[k - d + t] - c * b
        return UniPoly(q), UniPoly(rem[:d] if d > 0 else [])

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def monic(self) -> "UniPoly":
        return self * self.lead().inverse() if self.coeffs else self

    def derivative(self, order: int = 1) -> "UniPoly":
        cs = list(self.coeffs)
        for _ in range(order):
            cs = [c * k for k, c in enumerate(cs)][1:]
        return UniPoly(cs)

    def taylor(self, x0: ScalarLike) -> "UniPoly":
        """Coefficients of ``self(x + x0)``: Taylor coefficients at ``x0``."""
        return self.compose(UniPoly([x0, 1]))

    def compose(self, inner: "UniPoly") -> "UniPoly":
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + UniPoly([c])
        return acc

    def order_at(self, x0: ScalarLike = 0) -> Union[int, float]:
        """Vanishing order at ``x0``; ``inf`` for the zero polynomial."""
        if self.is_zero():
            return INF
        t = self.taylor(x0) if scalar(x0) else self
        return next(k for k, c in enumerate(t.coeffs) if not c.is_zero())

    def __repr__(self) -> str:
        return f"UniPoly([{', '.join(str(c) for c in self.coeffs)}])"

    def to_json(self) -> List[str]:
        return [str(c) for c in self.coeffs]


INF = float("inf")


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: UniPoly, b: UniPoly) -> Tuple[UniPoly, UniPoly, UniPoly]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = a, b
    s0, s1 = UniPoly([1]), UniPoly()
    t0, t1 = UniPoly(), UniPoly([1])
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = r0.lead().inverse() if not r0.is_zero() else ONE
    return r0 * inv, s0 * inv, t0 * inv


def squarefree_decomposition(p: UniPoly) -> List[Tuple[UniPoly, int]]:
    """Yun's algorithm: ``p = lc * prod f_k^k`` with ``f_k`` squarefree, coprime."""
    if p.degree <= 0:
        return []
    out: List[Tuple[UniPoly, int]] = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    k = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b // a
        c = d // a
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a, k))
        k += 1
    return out


# ---------------------------------------------------------------- BiPoly

Monomial = Tuple[int, int]


class BiPoly:
    """Sparse bivariate polynomial ``{(deg_x, deg_y): coeff}``; no stored zeros.

    Variable names are positional: the first slot is called ``x`` (or ``u``)
    and the second ``y`` (or ``v``).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, ScalarLike] | None = None):
        clean: Dict[Monomial, ExactScalar] = {}
        for k, c in (terms or {}).items():
            c = scalar(c)
            if not c.is_zero():
                clean[(int(k[0]), int(k[1]))] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    @classmethod
    def const(cls, c: ScalarLike) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def from_uni(cls, p: UniPoly, var: str = "x") -> "BiPoly":
        if var in ("x", "u"):
            return cls({(k, 0): c for k, c in enumerate(p.coeffs)})
        return cls({(0, k): c for k, c in enumerate(p.coeffs)})

    def is_zero(self) -> bool:
        return not self.terms

    def __iter__(self) -> Iterator[Tuple[Monomial, ExactScalar]]:
        return iter(sorted(self.terms.items()))

    def coeff(self, dx: int, dy: int) -> ExactScalar:
        return self.terms.get((dx, dy), ZERO)

    def deg(self, var: str) -> int:
        k = _var_index(var)
        return max((m[k] for m in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((a + b for a, b in self.terms), default=-1)

    def __add__(self, other) -> "BiPoly":
        other = _bco(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "BiPoly":
        return self + (-_bco(other))

    def __rsub__(self, other) -> "BiPoly":
        return _bco(other) - self

    def __mul__(self, other) -> "BiPoly":
        other = _bco(other)
        out: Dict[Monomial, ExactScalar] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, ZERO) + c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BiPoly":
        out, base = BiPoly.const(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiPoly):
            try:
                other = _bco(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "BiPoly(0)"
        parts = []
        for (a, b), c in sorted(self.terms.items(), key=lambda t: (-t[0][1], -t[0][0])):
            mono = "".join(
                s for s in (_pw("x", a), _pw("y", b)) if s
            ) or "1"
            parts.append(f"({c})*{mono}")
        return "BiPoly(" + " + ".join(parts) + ")"

    def truncate(self, var: str, bound: int) -> "BiPoly":
        """Drop every term whose ``var`` exponent is ``>= bound``."""
        k = _var_index(var)
        return BiPoly({m: c for m, c in self.terms.items() if m[k] < bound})

    def as_uni(self, var: str) -> Dict[int, UniPoly]:
        """Group by powers of ``var``; values are polynomials in the other variable."""
        k = _var_index(var)
        groups: Dict[int, Dict[int, ExactScalar]] = {}
        for m, c in self.terms.items():
            groups.setdefault(m[k], {})[m[1 - k]] = c
        return {
            e: UniPoly(g.get(t, ZERO) for t in range(max(g) + 1)) for e, g in groups.items()
        }

    def restrict(self, var: str, value: ScalarLike) -> UniPoly:
        """Set ``var = value``; returns a polynomial in the other variable."""
        value = scalar(value)
        k = _var_index(var)
        out: Dict[int, ExactScalar] = {}
        for m, c in self.terms.items():
            out[m[1 - k]] = out.get(m[1 - k], ZERO) + c * value ** m[k]
        if not out:
            return UniPoly()
        return UniPoly(out.get(t, ZERO) for t in range(max(out) + 1))

    def to_json(self) -> Dict[str, list]:
        return {
            "terms": [
                [a, b, _frac_str(c.re), _frac_str(c.im)] for (a, b), c in sorted(self.terms.items())
            ]
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "BiPoly":
        return cls(
            {(int(t[0]), int(t[1])): ExactScalar(Fraction(t[2]), Fraction(t[3])) for t in obj["terms"]}
        )


def _pw(name: str, e: int) -> str:
    return "" if e == 0 else (name if e == 1 else f"{name}^{e}")


def _bco(value) -> BiPoly:
    if isinstance(value, BiPoly):
        return value
    return BiPoly.const(scalar(value))


def _var_index(var: str) -> int:
    if var in ("x", "u"):
        return 0
    if var in ("y", "v"):
        return 1
    raise ValueError(f"unknown variable {var!r}")


# ------------------------------------------------------------ operations


def poly_derivative(p: BiPoly, var: str, order: int = 1) -> BiPoly:
    """Formal partial derivative of the given order in ``var``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    k = _var_index(var)
    out: Dict[Monomial, ExactScalar] = {}
    for m, c in p.terms.items():
        e = m[k]
        if e < order:
            continue
        factor = 1
        for t in range(order):
            factor *= e - t
        nm = (m[0] - order, m[1]) if k == 0 else (m[0], m[1] - order)
        out[nm] = c * factor
    return BiPoly(out)


def poly_eval(p: BiPoly, x0: ScalarLike, y0: ScalarLike) -> ExactScalar:
    x0, y0 = scalar(x0), scalar(y0)
    acc = ZERO
    for (a, b), c in p.terms.items():
        acc = acc + c * x0 ** a * y0 ** b
    return acc


def poly_substitute(p: BiPoly, f: BiPoly, g: BiPoly) -> BiPoly:
    """Compose: ``p(f(u, v), g(u, v))``."""
    fpow: Dict[int, BiPoly] = {0: BiPoly.const(1)}
    gpow: Dict[int, BiPoly] = {0: BiPoly.const(1)}

    def power(cache: Dict[int, BiPoly], base: BiPoly, e: int) -> BiPoly:
        if e not in cache:
            cache[e] = power(cache, base, e - 1) * base
        return cache[e]

    acc = BiPoly()
    for (a, b), c in sorted(p.terms.items()):
        acc = acc + power(fpow, f, a) * power(gpow, g, b) * c
    return acc


def translate(p: BiPoly, x0: ScalarLike, y0: ScalarLike) -> BiPoly:
    """``p(x + x0, y + y0)``: moves ``(x0, y0)`` to the origin."""
    return poly_substitute(p, BiPoly.x() + scalar(x0), BiPoly.y() + scalar(y0))


def extract_monomial_cofactor(p: BiPoly, var: str) -> Tuple[int, BiPoly]:
    """Split ``p = var**e * cofactor`` with ``cofactor`` not divisible by ``var``."""
    if p.is_zero():
        raise ValueError("zero polynomial has no monomial cofactor")
    k = _var_index(var)
    e = min(m[k] for m in p.terms)
    shifted = {
        ((m[0] - e, m[1]) if k == 0 else (m[0], m[1] - e)): c for m, c in p.terms.items()
    }
    return e, BiPoly(shifted)


def taylor_coefficient(p: BiPoly, x0: ScalarLike, y0: ScalarLike, a: int, u: int) -> ExactScalar:
    """Divided derivative ``d_x^a d_y^u p(x0, y0) / (a! u!)``."""
    acc = ZERO
    x0, y0 = scalar(x0), scalar(y0)
    for (da, db), c in p.terms.items():
        if da < a or db < u:
            continue
        acc = acc + c * comb(da, a) * comb(db, u) * x0 ** (da - a) * y0 ** (db - u)
    return acc
