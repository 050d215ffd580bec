"""Sphere chain in CP^2 # 4(-CP^2) and the quasimorphisms it separates.

Checks the four lattice classes, builds their intersection graph, labels the
chain with field-factor units and counts pairwise-certified distinct ids,
with and without a Lagrangian torus disjoint from every sphere.
"""

from qhwb.config_solver import BlowupLattice, Even, chain_check, verify_sphere_class
from qhwb.spectral_layer import DisjointnessRegistry, SpectralClass, chain_classes, count_distinct_qmor


def main():
    L = BlowupLattice(4)
    classes = [L.E(2) - L.E(3), L.E(3) - L.E(4), L.E(4) - L.E(1), L.H - L.E(2) - L.E(3) - L.E(4)]
    for i, c in enumerate(classes, 1):
        chk = verify_sphere_class(L, c)
        print(f"S{i} = {str(c):<18} square {chk.square:>2}  c1 {chk.c1_pairing}  ok={chk.ok}")
    verdict, g = chain_check(L, classes, Even)
    order = g.path_order()
    print("intersection graph:", " - ".join(f"S{v + 1}" for v in order))
    print("labels:", [sorted(w) for w in verdict.witness])

    chain = chain_classes(verdict.witness, order)
    spheres_only = DisjointnessRegistry.of([(0, 2), (0, 3), (1, 3)])
    print("from spheres:", count_distinct_qmor(chain, spheres_only).count)
    with_torus = DisjointnessRegistry.of(list(map(tuple, spheres_only.pairs))
                                         + [("torus", i) for i in range(4)])
    res = count_distinct_qmor(chain, with_torus, extra=[("torus", SpectralClass.of("torus"))])
    print("with the torus:", res.count)
    for a, b, (x, y) in res.certificates:
        print(f"  {a} != {b}   via disjoint carriers {x}, {y}")


if __name__ == "__main__":
    main()
