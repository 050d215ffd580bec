from fractions import Fraction

import pytest
from hypothesis import strategies as st

from qhwb.field_tower import QQ, Novikov, T, nf_make
from qhwb.qh_algebra import AlgebraPresentation, alg_make
from qhwb.sphere_calc import sphere_class

ZETA3 = nf_make([1, 1, 1])  # t^2 + t + 1


def truncated(k, field=QQ, c=None):
    """Lambda[x]/(x^k - c), basis 1, x, ..., x^{k-1}."""
    c = T(1, field) if c is None else c
    sc = {}
    for i in range(k):
        for j in range(i, k):
            v = [0] * k
            if i + j < k:
                v[i + j] = 1
            else:
                v[i + j - k] = c
            sc[(i, j)] = v
    return alg_make(AlgebraPresentation([f"x{i}" for i in range(k)], 0, sc, field=field))


def s2xs2():
    t = T(1)
    sc = {(0, 0): [1, 0, 0, 0], (0, 1): [0, 1, 0, 0], (0, 2): [0, 0, 1, 0], (0, 3): [0, 0, 0, 1],
          (1, 1): [t, 0, 0, 0], (2, 2): [t, 0, 0, 0], (1, 2): [0, 0, 0, 1],
          (1, 3): [0, 0, t, 0], (2, 3): [0, t, 0, 0], (3, 3): [t * t, 0, 0, 0]}
    return alg_make(AlgebraPresentation(["one", "a", "b", "p"], 0, sc, [0, 2, 2, 4], 4, 2,
                                        [0, 0, 0, 1]))


def split(k=3, beta=None, n=2):
    """k orthogonal idempotents, each integrating to -1/(4 beta)."""
    beta = T(2) if beta is None else beta
    sc = {}
    for i in range(k):
        for j in range(i, k):
            v = [0] * k
            if i == j:
                v[i] = 1
            sc[(i, j)] = v
    return alg_make(AlgebraPresentation([f"e{i + 1}" for i in range(k)], None, sc, [0] * k, 4, n,
                                        [-1 / (4 * beta)] * k, unit_coords=[1] * k))


def sphere(A, *coords):
    return sphere_class(A, A.element(list(coords)))


@pytest.fixture
def split3():
    return split(3)


@pytest.fixture
def s2s2():
    return s2xs2()


# -- strategies ---------------------------------------------------------------

small_q = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exponents = st.builds(Fraction, st.integers(-6, 6), st.sampled_from([1, 2, 3]))


@st.composite
def laurent(draw, field=QQ, max_terms=3, nonzero=False):
    terms = draw(st.lists(st.tuples(small_q, exponents), min_size=1 if nonzero else 0,
                          max_size=max_terms))
    x = Novikov.zero(field)
    for c, e in terms:
        x = x + Novikov.monomial(c, e, field=field) if c else x
    if nonzero and not x:
        x = Novikov.const(1, field)
    return x


@st.composite
def scalars(draw, field=QQ):
    """Laurent polynomials and quotients of them."""
    num = draw(laurent(field))
    if draw(st.booleans()):
        return num
    return num / draw(laurent(field, nonzero=True))


@st.composite
def field_elems(draw, field=ZETA3):
    return field([draw(small_q) for _ in range(field.degree)])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.summary_lines():
            terminalreporter.write_line(line)
