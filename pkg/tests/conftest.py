import sys
from fractions import Fraction

import pytest
from hypothesis import assume, settings, strategies as st

from nilvar.algebra import Algebra, free_positions
from nilvar.field import Polynomial, RatFunc
from nilvar.linalg import determinant

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_ints = st.integers(min_value=-9, max_value=9)
rationals = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=9))
nonzero_rationals = rationals.filter(bool)
polys = st.lists(rationals, min_size=0, max_size=4).map(Polynomial)
nonzero_polys = polys.filter(bool)
ratfuncs = st.builds(RatFunc, polys, nonzero_polys)
nonzero_ratfuncs = ratfuncs.filter(bool)


@st.composite
def gamma_algebras(draw, dims=(2, 3, 4), cls="general", density=0.6):
    n = draw(st.sampled_from(dims))
    cs = {}
    for (i, j, k) in free_positions(n, cls):
        if draw(st.floats(0, 1)) < density:
            v = draw(nonzero_rationals)
            cs[(i, j, k)] = v
            if cls == "commutative" and i != j:
                cs[(j, i, k)] = v
            elif cls == "anticommutative":
                cs[(j, i, k)] = -v
    return Algebra(n, cs)


@st.composite
def matrices(draw, n, invertible=False):
    m = [[draw(rationals) for _ in range(n)] for _ in range(n)]
    if invertible:
        # a nonzero diagonal keeps most draws invertible
        for i in range(n):
            if not m[i][i]:
                m[i][i] = Fraction(1)
        assume(determinant(m) != 0)
    return m


@st.composite
def vectors(draw, n):
    return [draw(rationals) for _ in range(n)]


R3 = Algebra(3, {(1, 1, 2): 1, (2, 1, 3): 1, (2, 2, 3): 1})


@pytest.fixture
def r3():
    return R3


BASE3_POSITIONS = [(1, 1, 2), (1, 1, 3), (1, 2, 3), (2, 1, 3), (2, 2, 3)]
_EXTEND_VALUES = [0, 0, 1, -1, 2, Fraction(1, 2), Fraction(-3, 4), 5]


def base3(bits):
    """Dim-3 gamma-form target with 0/1 constants."""
    return Algebra(3, {p: 1 for p, b in zip(BASE3_POSITIONS, bits) if b})


def extend_target(base, n, rng, cls="general"):
    """Fill the free positions above base.dim with small random rationals."""
    cs = dict(base.constants)
    for (i, j, k) in free_positions(n, cls):
        if k <= base.dim:
            continue
        v = rng.choice(_EXTEND_VALUES)
        if not v:
            continue
        cs[(i, j, k)] = v
        if cls == "commutative":
            cs[(j, i, k)] = v
        elif cls == "anticommutative":
            cs[(j, i, k)] = -v
    return Algebra(n, cs)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
