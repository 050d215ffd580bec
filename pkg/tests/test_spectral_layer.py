import json

import pytest
from hypothesis import given, strategies as st

from conftest import s2xs2, sphere, split
from qhwb.config_solver import BlowupLattice, Even, OddGood, admissible, chain_check, dynkin
from qhwb.errors import ChainMalformed, NotFieldUnit, ParityUnsupported, PreconditionFailed
from qhwb.field_tower import T
from qhwb.spectral_layer import (
    DisjointnessRegistry, SpectralClass, UnitRef, chain_classes, chain_registry, count_distinct_qmor,
    dehn_inequality_check, dominance, sphere_spectral,
)
from qhwb.sphere_calc import sphere_idempotents

TT = 2 * T(1)


def test_dominance_example():
    assert dominance(SpectralClass.of("e1", "e3"), [SpectralClass.of("e1", "e2"), SpectralClass.of("e2", "e3")])
    assert not dominance(SpectralClass.of("e1", "e4"), [SpectralClass.of("e1", "e2")])


def test_field_units_only():
    with pytest.raises(NotFieldUnit):
        SpectralClass(frozenset({UnitRef("e", ideal_dimension=2)}))


def test_sphere_spectral_class(split3):
    A = split3
    sc = sphere_spectral(sphere_idempotents(A, sphere(A, TT, -TT, 0)))
    assert sc.ids == {A.basis(0), A.basis(1)}


def test_even_dehn_check(split3):
    A = split3
    rep = dehn_inequality_check(A, sphere(A, TT, -TT, 0), sphere(A, 0, TT, -TT), Even)
    assert rep.mode == "even"
    assert rep.subset_holds
    assert rep.sets["tau_L(L')"] == ["0,0,1", "1,0,0"]


def test_even_dehn_needs_a2_pair(split3):
    A = split3
    l = sphere(A, TT, -TT, 0)
    with pytest.raises(PreconditionFailed):
        dehn_inequality_check(A, l, l, Even)


def test_odd_dehn_certifies_equality(split3):
    e = SpectralClass.of("e")
    rep = dehn_inequality_check(split3, None, None, OddGood, odd_units=(e, e, e))
    assert rep.mode == "odd"
    assert rep.subset_holds


def test_odd_dehn_needs_units(split3):
    with pytest.raises(ParityUnsupported):
        dehn_inequality_check(split3, None, None, OddGood)
    with pytest.raises(PreconditionFailed):
        dehn_inequality_check(split3, None, None, OddGood,
                              odd_units=(SpectralClass.of("a"), SpectralClass.of("b"), SpectralClass.of("a")))


@pytest.mark.parametrize("m", range(2, 7))
def test_chain_counting(m):
    v = admissible(dynkin("A", m), Even)
    count = count_distinct_qmor(chain_classes(v.witness), chain_registry(m))
    assert count.count == m - 1
    for a, b, (x, y) in count.certificates:
        assert chain_registry(m).disjoint(x, y)


def test_counting_needs_disjointness_certificates():
    v = admissible(dynkin("A", 4), Even)
    # unit 2 lives on spheres 0, 1 and unit 3 on spheres 1, 2: only (0, 2) separates them
    reg = chain_registry(4).without(0, 2)
    assert count_distinct_qmor(chain_classes(v.witness), reg).count < 3


def test_malformed_chains():
    with pytest.raises(ChainMalformed):
        count_distinct_qmor([SpectralClass.of(1, 2), SpectralClass.of(3, 4)], chain_registry(2))
    with pytest.raises(ChainMalformed):
        count_distinct_qmor([SpectralClass.of(1, 2), SpectralClass.of(2, 3), SpectralClass.of(3, 1)],
                            chain_registry(3))


def test_d4_lattice_with_torus():
    L = BlowupLattice(4)
    classes = [L.E(2) - L.E(3), L.E(3) - L.E(4), L.E(4) - L.E(1), L.H - L.E(2) - L.E(3) - L.E(4)]
    v, g = chain_check(L, classes, Even)
    order = g.path_order()
    chain = chain_classes(v.witness, order)
    assert count_distinct_qmor(chain, chain_registry(4)).count == 3
    reg = DisjointnessRegistry.of([(0, 2), (0, 3), (1, 3)] + [("torus", i) for i in range(4)])
    count = count_distinct_qmor(chain, reg, extra=[("torus", SpectralClass.of("torus"))])
    assert count.count == 4
    assert json.loads(json.dumps(count.to_json()))["count"] == 4


def test_registry_rejects_self_pairs():
    with pytest.raises(ValueError):
        DisjointnessRegistry.of([(1, 1)])


ids = st.sets(st.integers(0, 6), min_size=1, max_size=4)


@given(ids, st.lists(ids, max_size=4))
def test_dominance_is_containment(a, bs):
    union = set().union(*bs) if bs else set()
    got = dominance(SpectralClass.of(*a), [SpectralClass.of(*b) for b in bs])
    assert got == (a <= union)
