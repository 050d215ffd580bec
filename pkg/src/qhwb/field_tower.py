"""Exact coefficient tower: Q -> K = Q[t]/(m(t)) -> K(s), s = T^(1/N).

``NumberField``/``FieldElem`` give arithmetic in a number field presented by a
monic squarefree modulus.  ``Novikov`` models an element of the Novikov field
by a reduced rational function in ``s``; operands with different refinements
``N`` are rescaled to the common refinement before every operation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, inf, isqrt, lcm

from .errors import (
    DivisionByZero,
    NotInvertible,
    NotMonomial,
    NotSquarefree,
    RequiresFieldExtension,
    ValidationError,
)

INF = inf  # valuation of zero


# -- dense rational polynomials, coefficient lists low -> high ---------------

def _qtrim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _qsub(a, b):
    n = max(len(a), len(b))
    return _qtrim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _qmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _qtrim(out)


def _qdivmod(a, b):
    a = _qtrim(a)
    b = _qtrim(b)
    if not b:
        raise DivisionByZero("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        a = _qsub(a, [Fraction(0)] * shift + [c * x for x in b])
    return _qtrim(q), a


def _qxgcd(a, b):
    """Return (g, u, v) with u*a + v*b = g and g monic (or zero)."""
    r0, r1 = _qtrim(a), _qtrim(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = _qdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _qsub(s0, _qmul(q, s1))
        t0, t1 = t1, _qsub(t0, _qmul(q, t1))
    if r0:
        c = r0[-1]
        r0 = [x / c for x in r0]
        s0 = [x / c for x in s0]
        t0 = [x / c for x in t0]
    return r0, s0, t0


def _qderiv(p):
    return _qtrim([i * p[i] for i in range(1, len(p))])


# -- number fields ----------------------------------------------------------

@dataclass(frozen=True)
class NumberField:
    """Q[t]/(m(t)); ``modulus`` holds the coefficients of m, low to high."""

    modulus: tuple

    @property
    def degree(self):
        return len(self.modulus) - 1

    def __call__(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.field != self:
                raise ValueError("element belongs to a different number field")
            return value
        if isinstance(value, (int, Fraction)):
            return FieldElem(self, (Fraction(value),) + (Fraction(0),) * (self.degree - 1))
        coords = [Fraction(c) for c in value]
        return FieldElem(self, _reduce(self, coords))

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def gen(self):
        """The class of ``t``."""
        return self([0, 1])

    def __repr__(self):
        return f"NumberField({render_qpoly(self.modulus, 't')})"


def _reduce(field, coords):
    m = field.modulus
    d = field.degree
    p = list(coords)
    for k in range(len(p) - 1, d - 1, -1):
        c = p[k]
        if c:
            for i in range(d):
                p[k - d + i] -= c * m[i]
        p[k] = Fraction(0)
    p = p[:d]
    p += [Fraction(0)] * (d - len(p))
    return tuple(p)


def nf_make(modulus) -> NumberField:
    """Build K = Q[t]/(m).  Irreducibility of m is the caller's promise."""
    m = _qtrim(Fraction(c) for c in modulus)
    if len(m) < 2:
        raise ValidationError("modulus must have degree >= 1")
    if m[-1] != 1:
        raise ValidationError("modulus must be monic")
    g, _, _ = _qxgcd(m, _qderiv(m))
    if len(g) > 1:
        raise NotSquarefree(f"gcd(m, m') = {render_qpoly(g, 't')}")
    return NumberField(tuple(m))


QQ = nf_make([-1, 1])


@dataclass(frozen=True)
class FieldElem:
    field: NumberField
    coords: tuple

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise ValueError("mixed number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElem(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElem(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.field.degree == 1:
            return FieldElem(self.field, (self.coords[0] * other.coords[0],))
        return FieldElem(self.field, _reduce(self.field, _qmul(self.coords, other.coords)))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if not self:
            raise DivisionByZero("inverse of zero in number field")
        if self.field.degree == 1:
            return FieldElem(self.field, (1 / self.coords[0],))
        g, u, _ = _qxgcd(list(self.coords), list(self.field.modulus))
        if len(g) != 1:
            raise NotInvertible(
                f"{render_field_elem(self)} shares the factor {render_qpoly(g, 't')} "
                "with the modulus; the modulus is reducible"
            )
        return self.field(u)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.coords[0] == other and not any(self.coords[1:])
        if isinstance(other, FieldElem):
            return self.field == other.field and self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        if not any(self.coords[1:]):
            return hash(self.coords[0])
        return hash(self.coords)

    def is_rational(self):
        return not any(self.coords[1:])

    def sign_key(self):
        """First nonzero coordinate; fixes the canonical branch of a root."""
        for c in self.coords:
            if c:
                return c
        return Fraction(0)

    def __repr__(self):
        return f"FieldElem({render_field_elem(self)})"


def nf_arith(op, x, y=None):
    """Dispatcher over the four number-field operations."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inverse()
    if op == "eq":
        return x == y
    raise ValueError(f"unknown operation {op!r}")


# -- roots in K via sympy's algebraic-number domains --------------------------

@lru_cache(maxsize=None)
def _sympy_domain(field):
    import sympy

    if field.degree == 1:
        return sympy.QQ
    t = sympy.Symbol("t")
    m = sum(sympy.Rational(c.numerator, c.denominator) * t**i for i, c in enumerate(field.modulus))
    dom = sympy.QQ.algebraic_field(sympy.CRootOf(m, 0))
    minpoly = [Fraction(int(c.numerator), int(c.denominator)) for c in dom.mod.to_list()]
    if tuple(reversed(minpoly)) != field.modulus:
        raise NotInvertible(f"modulus {render_qpoly(field.modulus, 't')} is reducible")
    return dom


def _to_sympy(dom, x):
    from sympy.polys.polyclasses import ANP

    if x.field.degree == 1:
        return dom.convert(x.coords[0])
    rep = [dom.dom.convert(c) for c in reversed(_qtrim(x.coords))]
    return ANP(rep, dom.mod.to_list(), dom.dom)


def _from_sympy(field, c):
    if field.degree == 1:
        return field(Fraction(int(c.numerator), int(c.denominator)))
    coeffs = [Fraction(int(q.numerator), int(q.denominator)) for q in reversed(c.to_list())]
    return field(coeffs)


def field_roots(coeffs) -> list:
    """Distinct roots in K of the polynomial with K-coefficients ``coeffs`` (low -> high)."""
    import sympy

    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if len(coeffs) < 2:
        return []
    field = coeffs[0].field
    dom = _sympy_domain(field)
    x = sympy.Symbol("x")
    poly = sympy.Poly.from_list([_to_sympy(dom, c) for c in reversed(coeffs)], x, domain=dom)
    roots = []
    for factor, _ in poly.factor_list()[1]:
        if factor.degree() == 1:
            a, b = factor.rep.to_list()
            roots.append(_from_sympy(field, dom.quo(-b, a)))
    roots.sort(key=lambda r: r.coords)
    return roots


def field_sqrt(u: FieldElem) -> FieldElem:
    """Square root in K on the canonical branch (first nonzero coordinate > 0)."""
    if not u:
        return u
    if u.field.degree == 1:
        q = u.coords[0]
        if q < 0:
            raise RequiresFieldExtension(u)
        a, b = isqrt(q.numerator), isqrt(q.denominator)
        if a * a != q.numerator or b * b != q.denominator:
            raise RequiresFieldExtension(u)
        return u.field(Fraction(a, b))
    roots = field_roots([-u, u.field.zero, u.field.one])
    if not roots:
        raise RequiresFieldExtension(u)
    return next(r for r in roots if r.sign_key() > 0)


# -- sparse polynomials over K in s: dict exponent -> FieldElem ---------------

def _padd(a, b, sign=1):
    out = dict(a)
    for k, c in b.items():
        if sign < 0:
            c = -c
        v = out.get(k)
        v = c if v is None else v + c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _pmul(a, b):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            k = i + j
            v = out.get(k)
            v = x * y if v is None else v + x * y
            out[k] = v
    return {k: v for k, v in out.items() if v}


def _pscale(a, c, shift=0):
    return {k + shift: v * c for k, v in a.items()} if c else {}


def _pdivmod(a, b):
    db = max(b)
    lead_inv = b[db].inverse()
    q = {}
    r = dict(a)
    while r:
        dr = max(r)
        if dr < db:
            break
        c = r[dr] * lead_inv
        q[dr - db] = c
        r = _padd(r, _pscale(b, c, dr - db), sign=-1)
    return q, r


def _pmonic(a):
    inv = a[max(a)].inverse()
    return {k: v * inv for k, v in a.items()}


def _pgcd(a, b):
    if len(a) == 1 or len(b) == 1:
        k = min(min(a), min(b))
        return {k: next(iter(a.values())).field.one}
    # Euclid over Q blows up coefficients at high degree; sympy's gcd does not.
    import sympy

    field = next(iter(a.values())).field
    dom = _sympy_domain(field)
    s = sympy.Symbol("s")

    def conv(p):
        top = max(p)
        return sympy.Poly.from_list(
            [_to_sympy(dom, p[k]) if k in p else dom.zero for k in range(top, -1, -1)], s, domain=dom)

    g = conv(a).gcd(conv(b)).rep.to_list()
    n = len(g) - 1
    return _pmonic({n - i: _from_sympy(field, c) for i, c in enumerate(g) if c})


def _is_one(p):
    return len(p) == 1 and 0 in p and p[0] == 1


# -- Novikov scalars ------------------------------------------------------------

class Novikov:
    """Element of K(s) with s = T^(1/n), kept reduced with monic denominator.

    Instances are immutable; equality is structural on the canonical form.
    """

    __slots__ = ("field", "n", "num", "den", "_hash")

    def __init__(self, field, n, num, den):
        # Use Novikov.make; this constructor trusts its input.
        self.field = field
        self.n = n
        self.num = num
        self.den = den
        self._hash = None

    # construction -----------------------------------------------------------
    @classmethod
    def make(cls, field, n, num: dict, den: dict) -> "Novikov":
        num = {k: v for k, v in num.items() if v}
        den = {k: v for k, v in den.items() if v}
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            return cls.zero(field)
        if not _is_one(den):
            g = _pgcd(num, den)
            if not _is_one(g):
                if len(g) == 1:
                    (k,) = g
                    num = {e - k: c for e, c in num.items()}
                    den = {e - k: c for e, c in den.items()}
                else:
                    num, _ = _pdivmod(num, g)
                    den, _ = _pdivmod(den, g)
            lead = den[max(den)]
            if lead != 1:
                inv = lead.inverse()
                num = {k: v * inv for k, v in num.items()}
                den = {k: v * inv for k, v in den.items()}
        g = n
        for k in num:
            g = gcd(g, k)
        for k in den:
            g = gcd(g, k)
        if g > 1:
            n //= g
            num = {k // g: v for k, v in num.items()}
            den = {k // g: v for k, v in den.items()}
        return cls(field, n, tuple(sorted(num.items())), tuple(sorted(den.items())))

    @classmethod
    def zero(cls, field=QQ):
        return cls(field, 1, (), ((0, field.one),))

    @classmethod
    def const(cls, value, field=QQ):
        c = field(value)
        if not c:
            return cls.zero(field)
        return cls(field, 1, ((0, c),), ((0, field.one),))

    @classmethod
    def monomial(cls, coeff, exponent=1, field=None) -> "Novikov":
        """``coeff * T^exponent`` for rational ``exponent``."""
        if field is None:
            field = coeff.field if isinstance(coeff, FieldElem) else QQ
        c = field(coeff)
        e = Fraction(exponent)
        k = e.numerator
        if k >= 0:
            return cls.make(field, e.denominator, {k: c}, {0: field.one})
        return cls.make(field, e.denominator, {0: c}, {-k: field.one})

    # coercion ---------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Novikov):
            if other.field != self.field:
                raise ValueError("mixed coefficient fields")
            return other
        if isinstance(other, (int, Fraction, FieldElem)):
            return Novikov.const(other, self.field)
        return NotImplemented

    def _at(self, n):
        k = n // self.n
        return ({e * k: c for e, c in self.num}, {e * k: c for e, c in self.den})

    def _common(self, other):
        n = lcm(self.n, other.n)
        return n, self._at(n), other._at(n)

    # arithmetic ---------------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other:
            return self
        if not self:
            return other
        n, (an, ad), (bn, bd) = self._common(other)
        if ad == bd:
            return Novikov.make(self.field, n, _padd(an, bn), ad)
        return Novikov.make(self.field, n, _padd(_pmul(an, bd), _pmul(bn, ad)), _pmul(ad, bd))

    __radd__ = __add__

    def __neg__(self):
        return Novikov(self.field, self.n, tuple((k, -c) for k, c in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self or not other:
            return Novikov.zero(self.field)
        n, (an, ad), (bn, bd) = self._common(other)
        return Novikov.make(self.field, n, _pmul(an, bn), _pmul(ad, bd))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other:
            raise DivisionByZero("division by zero Novikov scalar")
        n, (an, ad), (bn, bd) = self._common(other)
        return Novikov.make(self.field, n, _pmul(an, bd), _pmul(ad, bn))

    def __rtruediv__(self, other):
        return Novikov.const(other, self.field) / self

    def __pow__(self, k):
        if k < 0:
            return Novikov.const(1, self.field) / self ** (-k)
        out = Novikov.const(1, self.field)
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, Novikov):
            if isinstance(other, (int, Fraction, FieldElem)):
                other = Novikov.const(other, self.field)
            else:
                return NotImplemented
        return (self.field == other.field and self.n == other.n
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.num, self.den))
        return self._hash

    # inspection ---------------------------------------------------------------
    def valuation(self):
        """Minimal T-exponent; ``INF`` for zero."""
        if not self.num:
            return INF
        return Fraction(self.num[0][0] - self.den[0][0], self.n)

    def lowest_term(self):
        """(coefficient in K, T-exponent) of the lowest-order term."""
        if not self.num:
            raise DivisionByZero("zero has no lowest term")
        return self.num[0][1] / self.den[0][1], self.valuation()

    def is_monomial(self):
        return len(self.num) == 1 and len(self.den) == 1

    def is_laurent(self):
        return len(self.den) == 1

    def terms(self):
        """(coefficient, T-exponent) pairs of a Laurent polynomial."""
        if not self.is_laurent():
            raise NotMonomial("not a Laurent polynomial in T")
        shift = self.den[0][0]
        return [(c, Fraction(k - shift, self.n)) for k, c in self.num]

    def coefficient(self, exponent=0) -> FieldElem:
        """Coefficient of T^exponent in the expansion in increasing powers of s."""
        exponent = Fraction(exponent)
        if not self.num:
            return self.field.zero
        n = lcm(self.n, exponent.denominator)
        num, den = self._at(n)
        target = exponent * n  # s-exponent at refinement n
        d0 = min(den)
        shift = min(num) - d0
        if target < shift:
            return self.field.zero
        # num/den = s^shift * A(s)/B(s) with B(0) != 0
        a = {k - min(num): c for k, c in num.items()}
        b = {k - d0: c for k, c in den.items()}
        steps = int(target - shift)
        b0_inv = b[0].inverse()
        series = []
        for i in range(steps + 1):
            acc = a.get(i, self.field.zero)
            for j in range(1, i + 1):
                if j in b:
                    acc = acc - b[j] * series[i - j]
            series.append(acc * b0_inv)
        return series[steps]

    def __repr__(self):
        return f"Novikov({render(self)})"

    def __str__(self):
        return render(self)


def nov_arith(op, x, y):
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "eq":
        return x == y
    raise ValueError(f"unknown operation {op!r}")


def nov_valuation(x: Novikov):
    return x.valuation()


def nov_sqrt(x: Novikov) -> Novikov:
    """Square root of a monomial ``u * T^(j/n)``, canonical branch."""
    if not x:
        raise NotMonomial("square root of zero is not taken")
    if not x.is_monomial():
        raise NotMonomial(f"{render(x)} is not a monomial")
    u, e = x.lowest_term()
    w = field_sqrt(u)
    return Novikov.monomial(w, e / 2, field=x.field)


def T(exponent=1, field=QQ) -> Novikov:
    return Novikov.monomial(field.one, exponent, field=field)


# -- rendering ------------------------------------------------------------------

def _render_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render_qpoly(coeffs, var):
    """Render a rational polynomial (low -> high) in ``var``."""
    parts = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        parts.append((c, mono))
    if not parts:
        return "0"
    out = ""
    for idx, (c, mono) in enumerate(parts):
        neg = c < 0
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{_render_rational(a)}*{mono}"
        else:
            body = _render_rational(a)
        if idx == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


def render_field_elem(x: FieldElem):
    return render_qpoly(x.coords, "t")


def _render_exponent(e):
    e = Fraction(e)
    if e == 1:
        return "T"
    return f"T^{{{_render_rational(e)}}}"


def _render_laurent(terms):
    if not terms:
        return "0"
    out = ""
    for idx, (c, e) in enumerate(terms):
        mono = "" if e == 0 else _render_exponent(e)
        if c.is_rational():
            q = c.coords[0]
            neg = q < 0
            a = abs(q)
            if mono:
                body = mono if a == 1 else f"{_render_rational(a)}*{mono}"
            else:
                body = _render_rational(a)
        else:
            neg = False
            body = f"({render_field_elem(c)})" + (f"*{mono}" if mono else "")
        if idx == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


def render(x: Novikov) -> str:
    """Canonical text form; inverse of the DSL scalar parser on canonical values."""
    if x.is_laurent():
        return _render_laurent(x.terms())
    num = [(c, Fraction(k, x.n)) for k, c in x.num]
    den = [(c, Fraction(k, x.n)) for k, c in x.den]
    return f"({_render_laurent(num)})/({_render_laurent(den)})"
