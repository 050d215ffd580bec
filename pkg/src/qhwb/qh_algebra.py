"""Finite-dimensional commutative algebras over the Novikov field.

An algebra is presented by structure constants on a named basis, optionally
with a grading (basis degrees plus the degree of T) and an integration
covector.  ``decompose`` splits a semisimple algebra into primitive
idempotents by finding monomial eigenvalues of multiplication operators.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .errors import (
    DimensionError,
    GradingViolation,
    NoGrading,
    NoIntegrationData,
    NotAssociative,
    NotCommutative,
    NotIdempotent,
    NotSemisimple,
    NotSplitOverField,
    UnitAxiomFailed,
)
from .field_tower import QQ, FieldElem, NumberField, Novikov, field_roots, render

DEFAULT_MAX_DIM = 64


def max_dim():
    return int(os.environ.get("QHWB_MAX_DIM", DEFAULT_MAX_DIM))


@dataclass(frozen=True)
class Element:
    coords: tuple

    def _check(self, other):
        if len(other.coords) != len(self.coords):
            raise DimensionError("elements of different algebras")

    def __add__(self, other):
        self._check(other)
        return Element(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return Element(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return Element(tuple(-a for a in self.coords))

    def scale(self, c):
        return Element(tuple(c * a for a in self.coords))

    def __rmul__(self, c):
        if isinstance(c, Element):
            return NotImplemented
        return self.scale(c)

    def __truediv__(self, c):
        return Element(tuple(a / c for a in self.coords))

    def __bool__(self):
        return any(self.coords)

    def __repr__(self):
        return "Element(" + ", ".join(render(c) for c in self.coords) + ")"

    def to_strings(self):
        return [render(c) for c in self.coords]


@dataclass
class AlgebraPresentation:
    basis_names: list
    unit_index: Optional[int]
    structure_constants: dict  # (i, j) -> sequence of scalars, the product b_i * b_j
    degrees: Optional[list] = None
    t_degree: Optional[int] = None
    parity_n: Optional[int] = None
    integration: Optional[list] = None
    field: NumberField = QQ
    novikov_n: int = 1
    sparse: bool = False
    unit_coords: Optional[list] = None  # used when the unit is not a basis element


@dataclass(frozen=True)
class IdempotentRecord:
    element: Element
    verified_field_unit: bool
    ideal_dimension: int

    def to_json(self):
        return {
            "coords": self.element.to_strings(),
            "ideal_dim": self.ideal_dimension,
            "verified_field_unit": self.verified_field_unit,
        }


@dataclass(frozen=True, eq=False)
class Algebra:
    field: NumberField
    basis_names: tuple
    unit_coords: tuple
    table: tuple  # table[i][j] = tuple of Novikov, product b_i * b_j
    degrees: Optional[tuple]
    t_degree: Optional[int]
    parity_n: Optional[int]
    integration: Optional[tuple]
    novikov_n: int = 1
    _traces: list = field(default_factory=list, repr=False)

    @property
    def dim(self):
        return len(self.basis_names)

    def scalar(self, value):
        if isinstance(value, Novikov):
            return value
        return Novikov.const(value, self.field)

    def element(self, coords) -> Element:
        if len(coords) != self.dim:
            raise DimensionError(f"expected {self.dim} coordinates, got {len(coords)}")
        return Element(tuple(self.scalar(c) for c in coords))

    def zero(self) -> Element:
        return self.element([0] * self.dim)

    def basis(self, i) -> Element:
        if isinstance(i, str):
            i = self.basis_names.index(i)
        return self.element([1 if k == i else 0 for k in range(self.dim)])

    @property
    def unit(self) -> Element:
        return Element(self.unit_coords)

    def mul(self, x: Element, y: Element) -> Element:
        out = [self.scalar(0)] * self.dim
        for i, a in enumerate(x.coords):
            if not a:
                continue
            row = self.table[i]
            for j, b in enumerate(y.coords):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] = out[k] + ab * c
        return Element(tuple(out))

    def power(self, x: Element, k: int) -> Element:
        out = self.unit
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def mult_matrix(self, x: Element):
        """Matrix of y -> x*y; column j is x*b_j."""
        cols = [self.mul(x, self.basis(j)).coords for j in range(self.dim)]
        return [[cols[j][k] for j in range(self.dim)] for k in range(self.dim)]

    def trace(self, x: Element):
        if not self._traces:
            self._traces.extend(
                sum((self.table[i][j][j] for j in range(self.dim)), self.scalar(0))
                for i in range(self.dim)
            )
        return sum((a * t for a, t in zip(x.coords, self._traces) if a), self.scalar(0))


def alg_make(p: AlgebraPresentation) -> Algebra:
    """Validate a presentation: commutativity, unit, associativity, grading."""
    d = len(p.basis_names)
    if d == 0 or d > max_dim():
        raise DimensionError(f"dimension {d} outside 1..{max_dim()}")
    if len(set(p.basis_names)) != d:
        raise DimensionError("duplicate basis names")

    def conv(c):
        return c if isinstance(c, Novikov) else Novikov.const(c, p.field)

    if p.unit_coords is not None:
        if len(p.unit_coords) != d:
            raise DimensionError("unit has wrong number of coordinates")
        unit = tuple(conv(c) for c in p.unit_coords)
    elif p.unit_index is not None and 0 <= p.unit_index < d:
        unit = tuple(conv(1 if k == p.unit_index else 0) for k in range(d))
    else:
        raise DimensionError("unit index out of range")

    zero_vec = tuple(conv(0) for _ in range(d))
    table = [[None] * d for _ in range(d)]
    for (i, j), vec in p.structure_constants.items():
        if not (0 <= i < d and 0 <= j < d):
            raise DimensionError(f"structure constant index ({i}, {j}) out of range")
        if len(vec) != d:
            raise DimensionError(f"product ({i}, {j}) has {len(vec)} coordinates, expected {d}")
        table[i][j] = tuple(conv(c) for c in vec)
    for i in range(d):
        for j in range(i, d):
            a, b = table[i][j], table[j][i]
            if a is not None and b is not None and a != b:
                raise NotCommutative(i, j)
            v = a if a is not None else b
            if v is None:
                if not p.sparse:
                    raise DimensionError(
                        f"missing product {p.basis_names[i]}*{p.basis_names[j]}"
                    )
                v = zero_vec
            table[i][j] = table[j][i] = v

    alg = Algebra(
        field=p.field,
        basis_names=tuple(p.basis_names),
        unit_coords=unit,
        table=tuple(tuple(r) for r in table),
        degrees=tuple(p.degrees) if p.degrees is not None else None,
        t_degree=p.t_degree,
        parity_n=p.parity_n,
        integration=tuple(conv(c) for c in p.integration) if p.integration is not None else None,
        novikov_n=p.novikov_n,
    )
    if alg.integration is not None and len(alg.integration) != d:
        raise DimensionError("integration covector has wrong length")

    for j in range(d):
        if alg.mul(alg.unit, alg.basis(j)) != alg.basis(j):
            raise UnitAxiomFailed(j)

    basis = [alg.basis(i) for i in range(d)]
    prods = [[Element(alg.table[i][j]) for j in range(d)] for i in range(d)]
    for i in range(d):
        for j in range(d):
            for k in range(d):
                if alg.mul(prods[i][j], basis[k]) != alg.mul(basis[i], prods[j][k]):
                    raise NotAssociative(i, j, k)

    if p.degrees is not None:
        if len(p.degrees) != d or p.t_degree is None:
            raise DimensionError("grading needs one degree per basis element and t_degree")
        _check_grading(alg)
    return alg


def _check_grading(alg: Algebra):
    deg = alg.degrees
    for i in range(alg.dim):
        for j in range(alg.dim):
            for k, c in enumerate(alg.table[i][j]):
                if not c:
                    continue
                if not c.is_laurent():
                    raise GradingViolation(i, j, k)
                for _, a in c.terms():
                    if deg[i] + deg[j] != deg[k] + alg.t_degree * a:
                        raise GradingViolation(i, j, k)


def mul(A: Algebra, x: Element, y: Element) -> Element:
    return A.mul(x, y)


# -- semisimplicity ------------------------------------------------------------

def trace_form(A: Algebra):
    """Gram matrix G[i][j] = tr(L_{b_i * b_j})."""
    return [[A.trace(Element(A.table[i][j])) for j in range(A.dim)] for i in range(A.dim)]


def semisimple(A: Algebra) -> bool:
    return bool(linalg.det(trace_form(A)))


# -- polynomial roots in K(s) ---------------------------------------------------

def _horner(coeffs, x):
    acc = x * 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs, r):
    """Divide the monic polynomial by (x - r); the remainder is discarded."""
    n = len(coeffs) - 1
    out = [None] * n
    acc = coeffs[n]
    for k in range(n - 1, -1, -1):
        out[k] = acc
        acc = coeffs[k] + acc * r
    return out


def _monomial_roots(coeffs, field):
    """Roots of the form c*T^mu, located via the Newton polygon."""
    roots = []
    if not coeffs[0]:
        roots.append(Novikov.zero(field))
    vals = {i: c.valuation() for i, c in enumerate(coeffs) if c}
    idx = sorted(vals)
    candidates = set()
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            i, j = idx[a], idx[b]
            mu = (vals[i] - vals[j]) / (j - i)
            low = min(vals[k] + k * mu for k in idx)
            if vals[i] + i * mu == low and vals[j] + j * mu == low:
                candidates.add(mu)
    for mu in sorted(candidates):
        low = min(vals[k] + k * mu for k in idx)
        on_edge = [k for k in idx if vals[k] + k * mu == low]
        base = on_edge[0]
        residual = [field.zero] * (on_edge[-1] - base + 1)
        for k in on_edge:
            residual[k - base] = coeffs[k].lowest_term()[0]
        for c in field_roots(residual):
            if not c:
                continue
            r = Novikov.monomial(c, mu, field=field)
            if not _horner(coeffs, r) and r not in roots:
                roots.append(r)
    return roots


def novikov_roots(coeffs, field=QQ):
    """Roots in K(s) of a monic squarefree polynomial (coefficients low -> high).

    Returns (roots, remaining factor).  Monomial roots come from the Newton
    polygon; once the remaining factor is linear its root is read off.
    """
    coeffs = list(coeffs)
    found = []
    while len(coeffs) > 1:
        if len(coeffs) == 2:
            found.append(-coeffs[0])
            coeffs = [coeffs[1]]
            break
        new = _monomial_roots(coeffs, field)
        if not new:
            break
        for r in new:
            found.append(r)
            coeffs = _deflate(coeffs, r)
    return found, coeffs


def render_poly(coeffs, var="x"):
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if c == 1 and mono:
            parts.append(mono)
        else:
            parts.append(f"({render(c)})" + (f"*{mono}" if mono else ""))
    return " + ".join(parts) if parts else "0"


# -- decomposition ------------------------------------------------------------

def min_poly(A: Algebra, y: Element, e: Element):
    """Monic minimal polynomial of y inside the ideal e*A (with unit e)."""
    powers = [e]
    zero = A.scalar(0)
    while True:
        powers.append(A.mul(powers[-1], y))
        rows = [[p.coords[k] for p in powers] for k in range(A.dim)]
        ns = linalg.nullspace(rows, zero)
        if ns:
            v = ns[0]
            # nullspace of the smallest dependent family: last entry is nonzero
            lead = v[-1]
            return [c / lead for c in v]


def _lagrange_split(A, e, y, roots):
    out = []
    for i, ri in enumerate(roots):
        acc = e
        for j, rj in enumerate(roots):
            if i != j:
                acc = A.mul(acc, y - e.scale(rj)).scale(1 / (ri - rj))
        out.append(acc)
    return out


def decompose(A: Algebra) -> list:
    """Primitive idempotents summing to the unit, each spanning a field factor."""
    if not semisimple(A):
        raise NotSemisimple("trace form is degenerate")
    blocks = [A.unit]
    for b in range(A.dim):
        bel = A.basis(b)
        nxt = []
        for e in blocks:
            y = A.mul(e, bel)
            f = min_poly(A, y, e)
            if len(f) == 2:
                nxt.append(e)
                continue
            roots, rest = novikov_roots(f, A.field)
            if len(rest) > 1:
                raise NotSplitOverField(render_poly(rest))
            nxt.extend(_lagrange_split(A, e, y, roots))
        blocks = nxt
    records = []
    for e in blocks:
        dim = ideal_dim(A, e)
        records.append(IdempotentRecord(e, dim == 1, dim))
    if any(r.ideal_dimension != 1 for r in records):
        # a block on which every basis element acts by a scalar has dimension 1
        raise NotSplitOverField("block of dimension > 1 survived splitting")
    return records


def ideal_dim(A: Algebra, e: Element) -> int:
    if A.mul(e, e) != e:
        raise NotIdempotent(repr(e))
    return linalg.rank(A.mult_matrix(e))


def decomposition_json(records):
    return [r.to_json() for r in records]


# -- integration ----------------------------------------------------------------

def integrate(A: Algebra, x: Element) -> Novikov:
    if A.integration is None:
        raise NoIntegrationData("algebra has no integration functional")
    return sum((c * a for c, a in zip(A.integration, x.coords) if a), A.scalar(0))


def intersection_number(A: Algebra, x: Element, y: Element) -> Novikov:
    """Classical pairing: the T^0 coefficient of the integral of x*y."""
    if A.integration is None:
        raise NoIntegrationData("algebra has no integration functional")
    if A.degrees is None:
        raise NoGrading("intersection numbers need a graded algebra")
    value = integrate(A, A.mul(x, y))
    return Novikov.const(value.coefficient(0), A.field)
