"""Dehn twist along an A2 pair in the split model.

Prints the idempotents of L, L' and tau_L(L'), the sign case read off the
shared idempotent, and the Floer-model composite on (1_L, p_L).
"""

from qhwb.config_solver import Even
from qhwb.field_tower import T, render
from qhwb.qh_algebra import AlgebraPresentation, alg_make
from qhwb.spectral_layer import dehn_inequality_check
from qhwb.sphere_calc import classify_sign, dehn_idempotents, floer_model, sphere_class, sphere_idempotents


def split_model(beta):
    sc = {(i, j): [1 if i == j == k else 0 for k in range(3)] for i in range(3) for j in range(i, 3)}
    return alg_make(AlgebraPresentation(["e1", "e2", "e3"], None, sc, [0, 0, 0], 4, 2,
                                        [-1 / (4 * beta)] * 3, unit_coords=[1, 1, 1]))


def names(A, pair):
    return sorted(A.basis_names[next(i for i, c in enumerate(e.coords) if c)] for e in pair)


def main():
    A = split_model(T(2))
    c = 2 * T(1)
    l = sphere_class(A, A.element([c, -c, 0]))
    lp = sphere_class(A, A.element([0, c, -c]))
    for label, cls in (("L", l), ("L'", lp)):
        s = sphere_idempotents(A, cls)
        print(f"{label:<9} beta = {render(s.beta):<6} idempotents {names(A, s.pair())}")
    tw = dehn_idempotents(A, l, lp)
    print(f"tau_L(L') class {tw.twisted.element.to_strings()} idempotents {names(A, tw.pair)}")
    print("sign case:", classify_sign(A, l, lp).tag)
    print("subset certificate:", dehn_inequality_check(A, l, lp, Even).subset_holds)
    F = floer_model(A, sphere_idempotents(A, l))
    print("CO o OC on (1_L, p_L):", [[render(x) for x in row] for row in F.composite_matrix()])


if __name__ == "__main__":
    main()
