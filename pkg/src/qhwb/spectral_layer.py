"""Symbolic asymptotic spectral invariants.

A sphere's invariant is the maximum of zeta_e over a finite set of
field-factor units e.  No zeta value is ever computed: inequalities between
such maxima are certified by set containment, and distinctness of
quasimorphisms by disjointness of superheavy carriers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Hashable

from .config_solver import EVEN, ParityCase
from .errors import ChainMalformed, NotFieldUnit, ParityUnsupported, PreconditionFailed
from .sphere_calc import SphereIdempotents, dehn_idempotents, shared_idempotents, sphere_idempotents


@dataclass(frozen=True)
class UnitRef:
    """Reference to an idempotent: its canonical element, or an abstract solver label."""

    key: Hashable
    ideal_dimension: int = 1


@dataclass(frozen=True)
class SpectralClass:
    units: frozenset

    def __post_init__(self):
        if not self.units:
            raise ValueError("a spectral class needs at least one idempotent")
        for u in self.units:
            if u.ideal_dimension != 1:
                raise NotFieldUnit(f"{u.key!r} spans an ideal of dimension {u.ideal_dimension}")

    @classmethod
    def of(cls, *keys):
        return cls(frozenset(UnitRef(k) for k in keys))

    @property
    def ids(self):
        return frozenset(u.key for u in self.units)


@dataclass(frozen=True)
class DisjointnessRegistry:
    pairs: frozenset = frozenset()

    @classmethod
    def of(cls, pairs):
        out = set()
        for a, b in pairs:
            if a == b:
                raise ValueError(f"{a!r} cannot be disjoint from itself")
            out.add(frozenset((a, b)))
        return cls(frozenset(out))

    def disjoint(self, a, b):
        return frozenset((a, b)) in self.pairs

    def without(self, a, b):
        return DisjointnessRegistry(self.pairs - {frozenset((a, b))})


def sphere_spectral(s: SphereIdempotents) -> SpectralClass:
    return SpectralClass(frozenset(
        UnitRef(r.element, r.ideal_dimension) for r in (s.e_plus, s.e_minus)))


def dominance(a: SpectralClass, bs) -> bool:
    """True certifies max over a <= max over the union of bs."""
    union = frozenset().union(*(b.ids for b in bs)) if bs else frozenset()
    return a.ids <= union


@dataclass(frozen=True)
class DehnReport:
    mode: str
    subset_holds: bool
    sets: dict

    def to_json(self):
        return {"mode": self.mode, "subset_holds": self.subset_holds, "sets": self.sets}


def dehn_inequality_check(A, l, lp, parity: ParityCase, odd_units=None) -> DehnReport:
    """Certify the Dehn-twist inequality for an A2 pair.

    Even parity recomputes the idempotents of the twisted class; the odd case
    takes ``odd_units`` = (unit of L, unit of L', unit of tau_L L') as
    singleton spectral classes and certifies equality.
    """
    if parity.tag == EVEN:
        if shared_idempotents(A, l, lp).count != 1:
            raise PreconditionFailed("the two classes do not form an A2 pattern")
        tw = dehn_idempotents(A, l, lp)
        twisted = SpectralClass.of(*tw.pair)
        sl = sphere_spectral(sphere_idempotents(A, l))
        slp = sphere_spectral(sphere_idempotents(A, lp))
        holds = dominance(twisted, [sl, slp])
        return DehnReport("even", holds, {
            "L": _labels(A, sl), "L'": _labels(A, slp), "tau_L(L')": _labels(A, twisted)})
    if odd_units is None or len(odd_units) != 3:
        raise ParityUnsupported("the odd case needs the three distinguished units")
    cl, clp, ctw = odd_units
    for c in odd_units:
        if len(c.ids) != 1:
            raise PreconditionFailed("odd-case spectral classes are singletons")
    if cl.ids != clp.ids:
        raise PreconditionFailed("the two spheres do not share their unit")
    holds = cl.ids == clp.ids == ctw.ids
    return DehnReport("odd", holds, {
        "L": sorted(map(str, cl.ids)), "L'": sorted(map(str, clp.ids)),
        "tau_L(L')": sorted(map(str, ctw.ids))})


def _labels(A, c):
    return sorted(",".join(e.to_strings()) if hasattr(e, "to_strings") else str(e) for e in c.ids)


@dataclass(frozen=True)
class QmorCount:
    count: int
    ids: tuple
    certificates: tuple  # (id_i, id_j, (carrier_a, carrier_b))

    def to_json(self):
        return {"count": self.count,
                "certificates": [[str(a), str(b), [str(x) for x in pair]]
                                 for a, b, pair in self.certificates]}


def count_distinct_qmor(chain, reg: DisjointnessRegistry, extra=()) -> QmorCount:
    """Count pairwise-certified distinct quasimorphisms from an A_m chain.

    ``chain`` lists the spectral classes of S_1..S_m in order (spheres are
    named by their index 0..m-1).  ``extra`` holds further superheavy
    carriers as (name, SpectralClass) pairs, e.g. a Lagrangian torus.
    Two units are certified distinct when some carrier of one is registered
    disjoint from some carrier of the other.
    """
    chain = list(chain)
    shared = []
    for i in range(len(chain) - 1):
        common = chain[i].ids & chain[i + 1].ids
        if len(common) != 1:
            raise ChainMalformed(f"spheres {i} and {i + 1} share {len(common)} units")
        shared.append(next(iter(common)))
    for i, j in combinations(range(len(chain)), 2):
        if j > i + 1 and chain[i].ids & chain[j].ids:
            raise ChainMalformed(f"non-consecutive spheres {i} and {j} share a unit")

    carriers = {}
    for i, c in enumerate(chain):
        for u in c.ids:
            carriers.setdefault(u, []).append(i)
    for name, c in extra:
        for u in c.ids:
            carriers.setdefault(u, []).append(name)

    ids = list(dict.fromkeys(shared + [u for _, c in extra for u in sorted(c.ids, key=str)]))
    cert = {}
    for a, b in combinations(range(len(ids)), 2):
        for x in carriers[ids[a]]:
            hit = next((y for y in carriers[ids[b]] if reg.disjoint(x, y)), None)
            if hit is not None:
                cert[(a, b)] = (x, hit)
                break
    best = _max_clique(len(ids), cert)
    certificates = tuple((ids[a], ids[b], cert[(a, b)]) for a, b in combinations(best, 2))
    return QmorCount(len(best), tuple(ids[k] for k in best), certificates)


def _max_clique(n, edges):
    best = ()
    for size in range(n, 0, -1):
        for cand in combinations(range(n), size):
            if all(p in edges for p in combinations(cand, 2)):
                return cand
    return best


def chain_classes(witness, order=None):
    """Spectral classes of an even-case solver witness, in chain order."""
    order = range(len(witness)) if order is None else order
    return [SpectralClass.of(*sorted(witness[v])) for v in order]


def chain_registry(m):
    """All non-consecutive pairs of an A_m chain registered disjoint."""
    return DisjointnessRegistry.of((i, j) for i, j in combinations(range(m), 2) if j > i + 1)
