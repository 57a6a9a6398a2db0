"""Integer linear algebra checked against sympy's Smith normal form."""

import random

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from floerkit.algebra.intlinalg import (
    integer_kernel,
    inverse_unimodular,
    invariant_factors,
    matmul,
    matvec,
    rank,
    smith_normal_form,
    solve_integer,
)

matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def _sympy_factors(A):
    M = sympy_snf(sympy.Matrix(A), domain=sympy.ZZ)
    return sorted(abs(int(M[i, i])) for i in range(min(M.shape)) if M[i, i] != 0)


@given(matrices)
def test_invariant_factors_match_sympy(A):
    assert sorted(invariant_factors(A)) == _sympy_factors(A)


@given(matrices)
def test_invariant_factors_form_a_divisibility_chain(A):
    d = invariant_factors(A)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    assert all(v > 0 for v in d)


@given(matrices)
def test_rank_matches_sympy(A):
    assert rank(A) == sympy.Matrix(A).rank()


@given(matrices)
def test_kernel_basis(A):
    n = len(A[0])
    K = integer_kernel(A, ncols=n)
    assert len(K) == n - sympy.Matrix(A).rank()
    for v in K:
        assert matvec(A, v) == [0] * len(A)
    if K:
        # saturated: the kernel lattice has trivial elementary divisors
        assert _sympy_factors(K) == [1] * len(K)


@given(matrices, st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_solve_finds_integer_solutions_of_consistent_systems(A, x):
    n = len(A[0])
    b = matvec(A, x[:n])
    sol = solve_integer(A, b, ncols=n)
    assert sol is not None
    assert matvec(A, sol) == b


def test_solve_reports_no_integer_solution():
    assert solve_integer([[2]], [1]) is None
    assert solve_integer([[1, 1], [1, 1]], [0, 1]) is None
    assert solve_integer([[2, 4]], [6]) is not None


def test_smith_normal_form_shape():
    S = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert [S[i][i] for i in range(3)] == [2, 6, 12]   # textbook example


def test_inverse_unimodular():
    A = [[2, 1], [1, 1]]
    B = inverse_unimodular(A)
    assert matmul(A, B) == [[1, 0], [0, 1]]
    assert inverse_unimodular([[2, 0], [0, 1]]) is None


@pytest.mark.parametrize("n", [2, 3, 4])
def test_random_unimodular_inverse(n):
    rng = random.Random(n)
    A = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(10):
        i, j = rng.sample(range(n), 2)
        k = rng.choice([-2, -1, 1, 2])
        A[i] = [a + k * b for a, b in zip(A[i], A[j])]
    assert matmul(A, inverse_unimodular(A)) == [[int(i == j) for j in range(n)] for i in range(n)]
