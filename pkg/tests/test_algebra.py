from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nilvar.algebra import (
    Algebra, NotNilpotent, NotNilpotentInput, Subspace, annihilator, apply_base_change,
    basis_vector, class_flags, free_positions, gamma_normalize, multiply, nilpotency_index,
    power_chain, sample_random, zero_algebra,
)
from nilvar.families import random_member
from nilvar.field import T, RatFunc
from nilvar.linalg import DimensionMismatch, SingularMatrix, identity, inverse, matmul, matvec
from conftest import R3, gamma_algebras, matrices, rationals, vectors

IDEMPOTENT = Algebra(1, {(1, 1, 1): 1})


def e(n, i):
    return basis_vector(n, i)


def test_r3_products():
    assert multiply(R3, e(3, 1), e(3, 1)) == e(3, 2)
    assert multiply(R3, [1, 1, 0], e(3, 1)) == [0, 1, 1]
    assert multiply(R3, [0, 0, 0], [1, 2, 3]) == [0, 0, 0]


def test_multiply_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        multiply(R3, [1, 0], [1, 0, 0])


def test_power_chains():
    assert [s.dim for s in power_chain(R3)] == [3, 2, 1, 1, 0]
    assert [s.dim for s in power_chain(zero_algebra(3))] == [3, 0]
    assert [s.dim for s in power_chain(Algebra(2, {(1, 1, 2): 1}))] == [2, 1, 0]


def test_nilpotency_index():
    assert nilpotency_index(R3) == 5 == 2 ** (3 - 1) + 1
    assert nilpotency_index(zero_algebra(4)) == 2
    assert nilpotency_index(IDEMPOTENT) is NotNilpotent


def test_annihilators():
    assert annihilator(R3) == Subspace(3, [e(3, 3)])
    assert annihilator(zero_algebra(3)).dim == 3
    assert annihilator(random_member("S", 4, 1)) == Subspace(4, [e(4, 4)])


def test_class_flags():
    assert class_flags(R3) == {"commutative": False, "anticommutative": False, "gamma_form": True}
    flags = class_flags(random_member("S", 4, 2))
    assert flags["commutative"] and flags["gamma_form"]
    assert class_flags(Algebra(3, {(1, 2, 3): 1, (2, 1, 3): -1}))["anticommutative"]


def test_scalar_base_change_scales_constants():
    g = [[Fraction(3) if i == j else 0 for j in range(3)] for i in range(3)]
    B = apply_base_change(R3, g)
    assert B.constants == {p: 3 * v for p, v in R3.constants.items()}
    assert apply_base_change(R3, identity(3)) == R3


def test_diagonal_base_change_over_qt():
    g = [[1, 0, 0], [0, 1, 0], [0, 0, 1 / T]]
    B = apply_base_change(R3, g)
    assert B.c(2, 1, 3) == T and B.c(2, 2, 3) == T and B.c(1, 1, 2) == 1


def test_singular_base_change():
    with pytest.raises(SingularMatrix):
        apply_base_change(R3, [[1, 0, 0], [0, 0, 0], [0, 0, 1]])


def test_gamma_normalize_on_gamma_form_is_identity():
    g, B = gamma_normalize(R3)
    assert g == identity(3) and B == R3


def test_gamma_normalize_restores_reversed_basis():
    perm = [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
    rev = apply_base_change(R3, perm)
    assert not class_flags(rev)["gamma_form"]
    g, B = gamma_normalize(rev)
    assert class_flags(B)["gamma_form"]
    assert nilpotency_index(B) == 5


def test_gamma_normalize_rejects_non_nilpotent():
    with pytest.raises(NotNilpotentInput):
        gamma_normalize(IDEMPOTENT)


def test_sampling_profiles():
    A = sample_random({"dim": 3, "class": "general", "gamma_form": True, "seed": 4})
    assert set(A.constants) == {(1, 1, 2), (1, 1, 3), (1, 2, 3), (2, 1, 3), (2, 2, 3)}
    assert len(free_positions(4, "commutative")) == 10
    for n in range(1, 9):
        assert len(free_positions(n)) == n * (n - 1) * (2 * n - 1) // 6


def test_sampling_is_reproducible():
    p = {"dim": 4, "class": "anticommutative", "seed": 11}
    assert sample_random(p) == sample_random(p)


# properties

@given(gamma_algebras(dims=(1, 2, 3, 4, 5)))
def test_gamma_form_is_nilpotent_within_bound(A):
    idx = nilpotency_index(A)
    assert idx is not NotNilpotent
    assert idx <= 2 ** (A.dim - 1) + 1


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(
    gamma_algebras(dims=(n,)), matrices(n, invertible=True), matrices(n, invertible=True))))
def test_base_change_is_a_right_action(args):
    A, g, h = args
    # columns-as-new-basis convention: g.(h.A) = (h g).A
    assert apply_base_change(apply_base_change(A, h), g) == apply_base_change(A, matmul(h, g))


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(
    gamma_algebras(dims=(n,)), matrices(n, invertible=True), vectors(n), vectors(n))))
def test_products_transport_through_base_change(args):
    A, g, x, y = args
    B = apply_base_change(A, g)
    gi = inverse(g)
    # x, y in old coordinates; B works in new ones
    lhs = multiply(B, matvec(gi, x), matvec(gi, y))
    assert lhs == matvec(gi, multiply(A, x, y))


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(
    gamma_algebras(dims=(n,)), matrices(n, invertible=True))))
def test_annihilator_moves_with_the_basis(args):
    A, g = args
    B = apply_base_change(A, g)
    assert annihilator(B) == annihilator(A).transform(inverse(g))


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(
    gamma_algebras(dims=(n,)), matrices(n, invertible=True), vectors(n), vectors(n))))
def test_gamma_normalize_is_an_isomorphism(args):
    A, g, x, y = args
    scrambled = apply_base_change(A, g)
    h, B = gamma_normalize(scrambled)
    assert class_flags(B)["gamma_form"]
    hi = inverse(h)
    assert multiply(B, matvec(hi, x), matvec(hi, y)) == matvec(hi, multiply(scrambled, x, y))
