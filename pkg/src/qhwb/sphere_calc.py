"""Idempotent calculus of Lagrangian sphere classes.

A sphere class l satisfies l^3 = 4*beta*l.  For beta != 0 the pair

    e_pm = +-l / (4 sqrt(beta)) + l^2 / (8 beta)

consists of orthogonal primitive idempotents with l = 2 sqrt(beta) (e_+ - e_-).
Labels e_+/e_- follow the canonical square-root branch, so every statement
that should not depend on the convention is made on unordered sets.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    AssertionFailed,
    BetaZero,
    ClaimError,
    Inconsistent,
    NoParityData,
    NotCubic,
    ParityUnsupported,
    PreconditionFailed,
    ZeroClass,
)
from .field_tower import Novikov, nov_sqrt, render
from .qh_algebra import Algebra, Element, IdempotentRecord, ideal_dim, intersection_number


@dataclass(frozen=True)
class SphereClass:
    element: Element
    parity_sign: int

    def __neg__(self):
        return SphereClass(-self.element, self.parity_sign)


def sphere_class(A: Algebra, element: Element) -> SphereClass:
    if A.parity_n is None:
        raise NoParityData("algebra has no parity_n; sphere classes need n")
    if not element:
        raise ZeroClass("the zero class is not a sphere class")
    n = A.parity_n
    return SphereClass(element, -1 if (n * (n - 1) // 2) % 2 else 1)


@dataclass(frozen=True)
class SphereIdempotents:
    beta: Novikov
    sqrt_beta: Novikov
    e_plus: IdempotentRecord
    e_minus: IdempotentRecord

    def pair(self):
        return frozenset((self.e_plus.element, self.e_minus.element))


def extract_beta(A: Algebra, l: SphereClass) -> Novikov:
    """The scalar beta with l^3 = 4 beta l."""
    x = l.element
    if not x:
        raise ZeroClass("the zero class has no beta")
    cube = A.mul(A.mul(x, x), x)
    k = next(i for i, c in enumerate(x.coords) if c)
    beta = cube.coords[k] / (4 * x.coords[k])
    if cube != x.scale(4 * beta):
        raise NotCubic("l^3 is not a scalar multiple of l")
    return beta


def sphere_idempotents(A: Algebra, l: SphereClass) -> SphereIdempotents:
    if A.parity_n is not None and A.parity_n % 2:
        raise ParityUnsupported("the e_+/e_- calculus needs even n; use the odd-case semantics")
    beta = extract_beta(A, l)
    if not beta:
        raise BetaZero("beta = 0: the class is nilpotent")
    root = nov_sqrt(beta)
    x = l.element
    sq = A.mul(x, x)
    half = sq.scale(1 / (8 * beta))
    lin = x.scale(1 / (4 * root))
    e_plus, e_minus = lin + half, half - lin

    for e in (e_plus, e_minus):
        if A.mul(e, e) != e:
            raise ClaimError("e_pm is not idempotent")
    if A.mul(e_plus, e_minus):
        raise ClaimError("e_+ and e_- are not orthogonal")
    if x != (e_plus - e_minus).scale(2 * root):
        raise ClaimError("l != 2 sqrt(beta) (e_+ - e_-)")
    dims = [ideal_dim(A, e) for e in (e_plus, e_minus)]
    if dims != [1, 1]:
        raise ClaimError(f"sphere idempotents span ideals of dimensions {dims}, expected 1")
    return SphereIdempotents(
        beta, root, IdempotentRecord(e_plus, True, 1), IdempotentRecord(e_minus, True, 1)
    )


# -- two-dimensional Floer model --------------------------------------------------

@dataclass(frozen=True)
class FloerElement:
    """u * 1_L + v * p_L."""

    unit: Novikov
    point: Novikov

    def __add__(self, other):
        return FloerElement(self.unit + other.unit, self.point + other.point)

    def scale(self, c):
        return FloerElement(c * self.unit, c * self.point)


@dataclass(frozen=True)
class FloerModel:
    """HF(L) on the basis (1_L, p_L) with p_L * p_L = beta * 1_L, plus CO^0 and OC^0."""

    algebra: Algebra
    sphere: SphereIdempotents

    @property
    def beta(self):
        return self.sphere.beta

    @property
    def one(self):
        return FloerElement(Novikov.const(1, self.algebra.field), Novikov.zero(self.algebra.field))

    @property
    def p(self):
        return FloerElement(Novikov.zero(self.algebra.field), Novikov.const(1, self.algebra.field))

    def mul(self, f: FloerElement, g: FloerElement) -> FloerElement:
        return FloerElement(
            f.unit * g.unit + self.beta * f.point * g.point,
            f.unit * g.point + f.point * g.unit,
        )

    def _component(self, x: Element, e: Element):
        """Scalar a with x*e = a*e; e spans a one-dimensional ideal."""
        xe = self.algebra.mul(x, e)
        k = next(i for i, c in enumerate(e.coords) if c)
        return xe.coords[k] / e.coords[k]

    def co0(self, x: Element) -> FloerElement:
        s = self.sphere
        a = self._component(x, s.e_plus.element)
        b = self._component(x, s.e_minus.element)
        half = Novikov.const(1, self.algebra.field) / 2
        inv = 1 / (2 * s.sqrt_beta)
        # CO(e_pm) = 1/2 * 1_L +- p_L / (2 sqrt(beta)); zero on the complementary ideal
        return FloerElement((a + b) * half, (a - b) * inv)

    def oc0(self, f: FloerElement) -> Element:
        s = self.sphere
        ep, em = s.e_plus.element, s.e_minus.element
        from_unit = (ep - em).scale(2 * s.sqrt_beta)
        from_point = (ep + em).scale(2 * s.beta)
        return from_unit.scale(f.unit) + from_point.scale(f.point)

    def composite_matrix(self):
        """Matrix of CO^0 o OC^0 on (1_L, p_L); column j is the image of basis j."""
        cols = [self.co0(self.oc0(b)) for b in (self.one, self.p)]
        return [[cols[0].unit, cols[1].unit], [cols[0].point, cols[1].point]]


def floer_model(A: Algebra, s: SphereIdempotents) -> FloerModel:
    if not s.beta:
        raise BetaZero("Floer model needs beta != 0")
    return FloerModel(A, s)


# -- pairs of spheres ---------------------------------------------------------------

@dataclass(frozen=True)
class SharedReport:
    patterns: tuple  # ("+", "-") means e^L_+ == e^L'_-
    shared: tuple
    count: int


def shared_idempotents(A, l, lp) -> SharedReport:
    s, sp = sphere_idempotents(A, l), sphere_idempotents(A, lp)
    mine = {"+": s.e_plus.element, "-": s.e_minus.element}
    theirs = {"+": sp.e_plus.element, "-": sp.e_minus.element}
    patterns = tuple((a, b) for a in "+-" for b in "+-" if mine[a] == theirs[b])
    shared = tuple(mine[a] for a, _ in patterns)
    return SharedReport(patterns, shared, len(set(shared)))


@dataclass(frozen=True)
class SignCase:
    tag: int  # -1 or +1
    pattern: tuple
    pairing: Novikov


def classify_sign(A, l, lp) -> SignCase:
    """Read the sign of (-1)^{n(n-1)/2} [L].[L'] off the shared idempotent, and cross-check."""
    report = shared_idempotents(A, l, lp)
    if report.count != 1:
        raise PreconditionFailed(f"classify_sign needs exactly one shared idempotent, got {report.count}")
    (pattern,) = report.patterns
    from_pattern = 1 if pattern[0] == pattern[1] else -1
    pairing = intersection_number(A, l.element, lp.element)
    signed = pairing * l.parity_sign
    if signed != from_pattern:
        raise Inconsistent(
            f"shared pattern {pattern} gives {from_pattern}, signed pairing is {render(signed)}"
        )
    return SignCase(from_pattern, pattern, pairing)


def pl_transform(A, l: SphereClass, x: Element) -> Element:
    """Picard-Lefschetz: x - (-1)^{n(n-1)/2} (l.x) l."""
    k = intersection_number(A, l.element, x)
    return x - l.element.scale(k * l.parity_sign)


@dataclass(frozen=True)
class DehnResult:
    twisted: SphereClass
    idempotents: SphereIdempotents
    expected: frozenset

    @property
    def pair(self):
        return self.idempotents.pair()


def dehn_idempotents(A, l, lp) -> DehnResult:
    """Idempotents of tau_L(L'), recomputed from the twisted class and checked."""
    report = shared_idempotents(A, l, lp)
    if report.count != 1:
        raise PreconditionFailed(f"not an A2 pattern: {report.count} shared idempotents")
    twisted = sphere_class(A, pl_transform(A, l, lp.element))
    got = sphere_idempotents(A, twisted)
    union = sphere_idempotents(A, l).pair() | sphere_idempotents(A, lp).pair()
    expected = union - frozenset(report.shared)
    if got.pair() != expected:
        raise AssertionFailed("idempotents of the twisted class differ from the closed form")
    return DehnResult(twisted, got, expected)


def sphere_report(A, l, others=()):
    """JSON-ready summary; ``others`` is a sequence of (name, SphereClass)."""
    s = sphere_idempotents(A, l)
    shared_with = []
    for name, other in others:
        rep = shared_idempotents(A, l, other)
        if rep.count:
            shared_with.append({"name": name, "count": rep.count,
                                "patterns": ["".join(p) for p in rep.patterns]})
    return {
        "beta": render(s.beta),
        "sqrt_beta": render(s.sqrt_beta),
        "e_plus": s.e_plus.element.to_strings(),
        "e_minus": s.e_minus.element.to_strings(),
        "ideal_dims": [s.e_plus.ideal_dimension, s.e_minus.ideal_dimension],
        "shared_with": shared_with,
    }
