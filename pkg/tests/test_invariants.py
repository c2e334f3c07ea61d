from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from nilvar.algebra import Algebra, apply_base_change, class_flags, nilpotency_index, zero_algebra
from nilvar.families import random_member
from nilvar.invariants import (
    NotAnticommutative, NotGenerating, bound_report, fibonacci, generated_subalgebra,
    length_chain, length_of_set, nilpotent_reduction,
)
from nilvar.linalg import DimensionMismatch, determinant, identity, inverse, matvec
from conftest import R3, gamma_algebras, matrices, vectors
from oracles import fibonacci_chain

CROSS = Algebra(3, {(1, 2, 3): 1, (2, 1, 3): -1, (2, 3, 1): 1, (3, 2, 1): -1,
                    (3, 1, 2): 1, (1, 3, 2): -1})


def test_fibonacci_normalization():
    assert [fibonacci(n) for n in range(1, 11)] == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55]
    with pytest.raises(ValueError):
        fibonacci(0)


def test_length_small_cases():
    assert length_of_set(R3, [1]) == 3
    assert length_of_set(R3, [1, 2, 3]) == 1
    assert length_of_set(zero_algebra(4), identity(4)) == 1
    chain = length_chain(R3, [1])
    assert [L.dim for L in chain] == [1, 2, 3]


def test_length_errors():
    with pytest.raises(NotGenerating):
        length_of_set(R3, [2])
    with pytest.raises(NotGenerating):
        length_of_set(R3, [])
    with pytest.raises(DimensionMismatch):
        length_of_set(R3, [[1, 0]])
    with pytest.raises(DimensionMismatch):
        length_of_set(R3, [4])


def test_fibonacci_chain_attains_the_bound():
    for n in range(3, 10):
        A = fibonacci_chain(n)
        assert length_of_set(A, [1, 2]) == fibonacci(n)
        assert nilpotency_index(A) == fibonacci(n) + 1


@pytest.mark.parametrize("n", [6, 7, 8, 9])
def test_t_members_have_fibonacci_index(n):
    for seed in range(3):
        A = random_member("T", n, seed)
        assert nilpotency_index(A) == fibonacci(n) + 1
        ell = length_of_set(A, [1, 2])
        assert ell <= fibonacci(n)


@pytest.mark.xfail(strict=True, reason="T_n members give length 5 for {e1, e2}; see the decisions ledger")
@pytest.mark.parametrize("n", [6, 7, 8])
def test_t_members_attain_fibonacci_length(n):
    assert length_of_set(random_member("T", n, 0), [1, 2]) == fibonacci(n)


def test_reduction_of_cross_product():
    res = nilpotent_reduction(CROSS, [1, 2])
    assert res.length == 2
    B = res.algebra
    assert B == Algebra(3, {(1, 2, 3): 1, (2, 1, 3): -1})
    assert nilpotency_index(B) == 3


def test_reduction_of_zero_algebra():
    res = nilpotent_reduction(zero_algebra(3), [1, 2, 3])
    assert res.algebra == zero_algebra(3)
    assert nilpotency_index(res.algebra) == 2


def test_reduction_of_t6_member():
    A = random_member("T", 6, 4)
    res = nilpotent_reduction(A, [1, 2])
    assert nilpotency_index(res.algebra) == res.length + 1 == length_of_set(A, [1, 2]) + 1


def test_reduction_needs_anticommutative():
    with pytest.raises(NotAnticommutative):
        nilpotent_reduction(R3, [1])


def test_bound_report_on_r3_and_t6():
    rep = bound_report(R3)
    assert rep["index"] == 5 and rep["ok"]
    assert rep["checks"][0]["attained"]
    t6 = bound_report(random_member("T", 6, 1), [1, 2])
    names = {c["name"]: c for c in t6["checks"]}
    assert names["index <= F_n+1"]["attained"] and names["index <= F_n+1"]["value"] == 9
    assert names["length <= F_n"]["holds"]
    nn = bound_report(CROSS)
    assert not nn["nilpotent"] and nn["checks"] == [] and nn["ok"]


def _generating(A, S):
    return generated_subalgebra(A, S).dim == A.dim


@given(gamma_algebras(dims=(2, 3, 4, 5, 6), cls="anticommutative"), st.data())
def test_length_bounded_by_fibonacci(A, data):
    n = A.dim
    S = data.draw(st.lists(vectors(n), min_size=1, max_size=n))
    assume(_generating(A, S))
    assert length_of_set(A, S) <= fibonacci(n)


@given(gamma_algebras(dims=(3, 4, 5)), st.data())
def test_chain_is_monotone_and_ends_at_whole(A, data):
    n = A.dim
    S = data.draw(st.lists(vectors(n), min_size=1, max_size=n))
    assume(_generating(A, S))
    chain = length_chain(A, S)
    dims = [L.dim for L in chain]
    assert dims == sorted(dims) and dims[-1] == n
    assert all(chain[i + 1].contains_space(chain[i]) for i in range(len(chain) - 1))
    # adding generators never lengthens
    assert length_of_set(A, S + [[1] + [0] * (n - 1)]) <= len(chain)


@given(gamma_algebras(dims=(3, 4, 5)), matrices(5, invertible=True), st.data())
def test_length_is_a_base_change_invariant(A, g, data):
    n = A.dim
    g = [row[:n] for row in g[:n]]
    assume(determinant(g) != 0)
    S = data.draw(st.lists(vectors(n), min_size=1, max_size=n))
    assume(_generating(A, S))
    B = apply_base_change(A, g)
    # coordinates of the same elements in the new basis
    ginv = inverse(g)
    S2 = [matvec(ginv, s) for s in S]
    assert length_of_set(B, S2) == length_of_set(A, S)


@given(gamma_algebras(dims=(2, 3, 4, 5, 6), cls="anticommutative"), st.data())
def test_reduction_index_is_length_plus_one(A, data):
    n = A.dim
    S = data.draw(st.lists(vectors(n), min_size=1, max_size=n))
    assume(_generating(A, S))
    res = nilpotent_reduction(A, S)
    B = res.algebra
    assert B.dim == n and class_flags(B)["anticommutative"]
    assert nilpotency_index(B) == res.length + 1
