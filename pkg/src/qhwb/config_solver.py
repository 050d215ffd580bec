"""Admissibility of sphere intersection graphs under idempotent sharing rules.

Even n: every sphere carries an unordered pair of field-factor units; spheres
meeting once share exactly one unit, disjoint spheres share none.
Odd n with (n+1)/(2 N_X) not an integer: every sphere carries one unit;
meeting spheres carry the same unit, disjoint ones distinct units.

The solver is a deterministic backtracking search with value-symmetry
breaking (fresh labels are introduced in increasing order).  Infeasible
instances come with a deletion-minimal conflict core.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .errors import (
    BadPairing,
    GraphTooLarge,
    InvalidDynkinParameters,
    ParityUnsupported,
    PreconditionFailed,
)

MAX_VERTICES = 12

EVEN = "even"
ODD_GOOD = "oddgood"


@dataclass(frozen=True)
class ConfigGraph:
    vertex_count: int
    edges: frozenset  # of (i, j) with i < j, 0-based

    @classmethod
    def from_edges(cls, vertex_count, edges):
        norm = set()
        for i, j in edges:
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (0 <= i < vertex_count and 0 <= j < vertex_count):
                raise ValueError(f"edge ({i}, {j}) references a missing vertex")
            e = (min(i, j), max(i, j))
            if e in norm:
                raise ValueError(f"duplicate edge {e}")
            norm.add(e)
        return cls(vertex_count, frozenset(norm))

    def adjacent(self, i, j):
        return (min(i, j), max(i, j)) in self.edges

    def neighbours(self, v):
        return [u for u in range(self.vertex_count) if u != v and self.adjacent(u, v)]

    def induced(self, vertices):
        vs = list(vertices)
        pos = {v: k for k, v in enumerate(vs)}
        return ConfigGraph.from_edges(
            len(vs), [(pos[i], pos[j]) for i, j in sorted(self.edges) if i in pos and j in pos])

    def has_cycle(self):
        parent = list(range(self.vertex_count))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in sorted(self.edges):
            a, b = find(i), find(j)
            if a == b:
                return True
            parent[a] = b
        return False

    def path_order(self):
        """Vertices in path order if the graph is a path, else None."""
        n = self.vertex_count
        if len(self.edges) != n - 1 or self.has_cycle():
            return None
        degs = [len(self.neighbours(v)) for v in range(n)]
        if n == 1:
            return [0]
        if max(degs) > 2:
            return None
        start = min(v for v in range(n) if degs[v] == 1)
        order, prev = [start], None
        while len(order) < n:
            nxt = [u for u in self.neighbours(order[-1]) if u != prev]
            prev = order[-1]
            order.append(nxt[0])
        return order


@dataclass(frozen=True)
class ParityCase:
    tag: str

    @classmethod
    def from_dimensions(cls, n, min_chern):
        if n % 2 == 0:
            return cls(EVEN)
        if Fraction(n + 1, 2 * min_chern).denominator != 1:
            return cls(ODD_GOOD)
        raise ParityUnsupported(f"n = {n} odd with (n+1)/(2 N_X) integral is not covered")


Even = ParityCase(EVEN)
OddGood = ParityCase(ODD_GOOD)


@dataclass(frozen=True, order=True)
class Constraint:
    u: int
    v: int
    kind: str  # "share_one" / "share_none" (even), "equal" / "distinct" (odd)

    def __str__(self):
        return f"{self.kind}({self.u + 1},{self.v + 1})"


@dataclass(frozen=True)
class Verdict:
    status: str  # "SAT" or "UNSAT"
    witness: Optional[tuple] = None  # per vertex: frozenset of ids (even) or an id (odd)
    conflict_core: Optional[tuple] = None
    notes: tuple = ()

    @property
    def sat(self):
        return self.status == "SAT"

    def to_json(self):
        out = {"status": self.status, "notes": list(self.notes)}
        if self.witness is not None:
            out["witness"] = [sorted(w) if isinstance(w, frozenset) else w for w in self.witness]
        if self.conflict_core is not None:
            out["conflict_core"] = [str(c) for c in self.conflict_core]
        return out


def dynkin(kind, m) -> ConfigGraph:
    """Standard A/D/E diagrams on vertices 0..m-1."""
    if kind == "A" and m >= 1:
        return ConfigGraph.from_edges(m, [(i, i + 1) for i in range(m - 1)])
    if kind == "D" and m >= 4:
        path = [(i, i + 1) for i in range(m - 2)]
        return ConfigGraph.from_edges(m, path + [(m - 3, m - 1)])
    if kind == "E" and m in (6, 7, 8):
        path = [(i, i + 1) for i in range(m - 2)]
        return ConfigGraph.from_edges(m, path + [(2, m - 1)])
    raise InvalidDynkinParameters(f"no Dynkin diagram of type {kind}_{m}")


def constraints_for(g: ConfigGraph, parity: ParityCase):
    on, off = ("share_one", "share_none") if parity.tag == EVEN else ("equal", "distinct")
    return [Constraint(i, j, on if g.adjacent(i, j) else off)
            for i, j in combinations(range(g.vertex_count), 2)]


def _holds(c: Constraint, a, b):
    if c.kind == "share_one":
        return len(a & b) == 1
    if c.kind == "share_none":
        return not (a & b)
    if c.kind == "equal":
        return a == b
    return a != b


def _candidates(parity, used, pool):
    """Labels in canonical order; fresh ids are introduced consecutively."""
    if parity.tag == ODD_GOOD:
        return list(range(1, min(used + 1, pool) + 1))
    pairs = [(a, b) for b in range(2, min(used + 1, pool) + 1) for a in range(1, b)]
    if used + 2 <= pool:
        pairs.append((used + 1, used + 2))
    pairs.sort(key=lambda p: (p[1], -p[0]))
    return [frozenset(p) for p in pairs]


def _search(n, cons, parity, order=None):
    """First labeling (in canonical order) satisfying ``cons``, or None.

    ``order`` lists the vertices in assignment order (default 0..n-1); the
    returned labeling is indexed by vertex.
    """
    order = list(range(n)) if order is None else list(order)
    pos = {v: k for k, v in enumerate(order)}
    m = len(order)
    pool = 2 * m if parity.tag == EVEN else m
    by_step = [[] for _ in range(m)]
    for c in cons:
        by_step[max(pos[c.u], pos[c.v])].append(c)
    labels = {}

    def go(k, used):
        if k == m:
            return True
        v = order[k]
        for cand in _candidates(parity, used, pool):
            if all(_holds(c, labels[c.u if c.v == v else c.v], cand) for c in by_step[k]):
                labels[v] = cand
                top = max(cand) if isinstance(cand, frozenset) else cand
                if go(k + 1, max(used, top)):
                    return True
        labels.pop(v, None)
        return False

    if not go(0, 0):
        return None
    return tuple(labels.get(v) for v in range(n))


def _max_cardinality_order(vertices, cons):
    deg = {v: 0 for v in vertices}
    nbrs = {v: set() for v in vertices}
    for c in cons:
        deg[c.u] += 1
        deg[c.v] += 1
        nbrs[c.u].add(c.v)
        nbrs[c.v].add(c.u)
    order = [min(vertices, key=lambda v: (-deg[v], v))]
    rest = set(vertices) - set(order)
    while rest:
        placed = set(order)
        nxt = min(rest, key=lambda v: (-len(nbrs[v] & placed), -deg[v], v))
        order.append(nxt)
        rest.discard(nxt)
    return order


def feasible(n, cons, parity) -> bool:
    """Decide satisfiability of an arbitrary constraint subset.

    Vertices carrying only negative constraints can always take fresh labels
    and are dropped; the rest splits into independent components.
    """
    positive = {"share_one", "equal"}
    live = set()
    for c in cons:
        if c.kind in positive:
            live.update((c.u, c.v))
    cons = [c for c in cons if c.u in live and c.v in live]
    parent = {v: v for v in live}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for c in cons:
        parent[find(c.u)] = find(c.v)
    comps = {}
    for v in sorted(live):
        comps.setdefault(find(v), []).append(v)
    for verts in comps.values():
        vs = set(verts)
        sub = [c for c in cons if c.u in vs]
        if _search(n, sub, parity, _max_cardinality_order(verts, sub)) is None:
            return False
    return True


def shrink_core(n, cons, parity):
    """Deletion-based shrinking in canonical constraint order."""
    core = list(sorted(cons))
    i = 0
    while i < len(core):
        trial = core[:i] + core[i + 1:]
        if not feasible(n, trial, parity):
            core = trial
        else:
            i += 1
    return tuple(core)


def check_labeling(g: ConfigGraph, parity: ParityCase, labeling) -> bool:
    """Independent check of a witness against the sharing rules."""
    if len(labeling) != g.vertex_count:
        return False
    for lab in labeling:
        if parity.tag == EVEN and not (isinstance(lab, frozenset) and len(lab) == 2):
            return False
    for i in range(g.vertex_count):
        for j in range(i + 1, g.vertex_count):
            a, b = labeling[i], labeling[j]
            if parity.tag == EVEN:
                k = len(a & b)
                if g.adjacent(i, j) and k != 1:
                    return False
                if not g.adjacent(i, j) and k != 0:
                    return False
            else:
                if g.adjacent(i, j) != (a == b):
                    return False
    return True


def admissible(g: ConfigGraph, parity: ParityCase) -> Verdict:
    if g.vertex_count > MAX_VERTICES:
        raise GraphTooLarge(f"{g.vertex_count} vertices exceeds the cap of {MAX_VERTICES}")
    notes = ("cycle: outside the A/D/E families",) if g.has_cycle() else ()
    cons = constraints_for(g, parity)
    witness = _search(g.vertex_count, cons, parity)
    if witness is not None:
        return Verdict("SAT", witness=witness, notes=notes)
    return Verdict("UNSAT", conflict_core=shrink_core(g.vertex_count, cons, parity), notes=notes)


# -- blow-up lattices ---------------------------------------------------------------

@dataclass(frozen=True)
class BlowupLattice:
    """H_2 of CP^2 blown up at k points: H.H = 1, E_i.E_j = -delta_ij."""

    k: int

    def cls(self, h=0, *es):
        es = tuple(es) + (0,) * (self.k - len(es))
        return LatticeClass(self, (h,) + es)

    @property
    def H(self):
        return self.cls(1)

    def E(self, i):
        coeffs = [0] * self.k
        coeffs[i - 1] = 1
        return self.cls(0, *coeffs)

    @property
    def c1(self):
        return self.cls(3, *([-1] * self.k))


@dataclass(frozen=True)
class LatticeClass:
    lattice: BlowupLattice
    coeffs: tuple  # (h, e_1, ..., e_k)

    def __add__(self, other):
        return LatticeClass(self.lattice, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return LatticeClass(self.lattice, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return LatticeClass(self.lattice, tuple(-a for a in self.coeffs))

    def __rmul__(self, k):
        return LatticeClass(self.lattice, tuple(k * a for a in self.coeffs))

    def __str__(self):
        names = ["H"] + [f"E{i}" for i in range(1, len(self.coeffs))]
        out = ""
        for c, name in zip(self.coeffs, names):
            if not c:
                continue
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            if not out:
                out = ("-" if c < 0 else "") + mag + name
            else:
                out += (" - " if c < 0 else " + ") + mag + name
        return out or "0"


def lattice_pair(L: BlowupLattice, c: LatticeClass, cp: LatticeClass) -> int:
    if c.lattice != L or cp.lattice != L:
        raise PreconditionFailed("classes from a different lattice")
    a, b = c.coeffs, cp.coeffs
    return a[0] * b[0] - sum(x * y for x, y in zip(a[1:], b[1:]))


@dataclass(frozen=True)
class SphereCheck:
    ok: bool
    square: int
    c1_pairing: int


def verify_sphere_class(L: BlowupLattice, c: LatticeClass) -> SphereCheck:
    sq = lattice_pair(L, c, c)
    ch = lattice_pair(L, c, L.c1)
    return SphereCheck(sq == -2 and ch == 0, sq, ch)


def chain_check(L: BlowupLattice, classes, parity: ParityCase):
    """Intersection graph of sphere classes (edge iff pairing = +-1) and its verdict."""
    for i, c in enumerate(classes):
        if not verify_sphere_class(L, c).ok:
            raise PreconditionFailed(f"class {i + 1} ({c}) is not a sphere class")
    edges = []
    for i, j in combinations(range(len(classes)), 2):
        v = lattice_pair(L, classes[i], classes[j])
        if v not in (-1, 0, 1):
            raise BadPairing(i + 1, j + 1, v)
        if v:
            edges.append((i, j))
    g = ConfigGraph.from_edges(len(classes), edges)
    return admissible(g, parity), g
