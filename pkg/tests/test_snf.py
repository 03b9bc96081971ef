"""Smith normal form, integer kernels and LLL against independent oracles."""

import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from fourfold.intlat import determinant, integer_kernel, lll_reduce, smith_normal_form

from oracles import brute_force_smith_diagonal


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def diagonal(D):
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def test_known_example():
    D, U, V = smith_normal_form([[2, 4], [6, 8]])
    assert diagonal(D) == [2, 4]


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_factorization(A):
    D, U, V = smith_normal_form(A)
    assert matmul(matmul(U, A), V) == D
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    d = diagonal(D)
    for i, row in enumerate(D):
        for j, v in enumerate(row):
            assert v == 0 or i == j
    assert all(v >= 0 for v in d)
    nonzero = [v for v in d if v]
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    assert d[len(nonzero):] == [0] * (len(d) - len(nonzero))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_snf_matches_sympy(A):
    ours = [v for v in diagonal(smith_normal_form(A)[0]) if v]
    theirs = sympy_snf(sympy.Matrix(A), domain=sympy.ZZ)
    ref = [abs(int(theirs[i, i])) for i in range(min(theirs.shape)) if theirs[i, i] != 0]
    assert ours == ref


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_snf_matches_determinantal_divisors(A):
    ours = [v for v in diagonal(smith_normal_form(A)[0]) if v]
    assert ours == brute_force_smith_diagonal(A)


def test_snf_empty_rows():
    D, U, V = smith_normal_form([], ncols=3)
    assert D == [] and len(V) == 3


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_kernel_is_saturated(A):
    n = len(A[0])
    basis = integer_kernel(A, n)
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in A)
    assert len(basis) == n - sympy.Matrix(A).rank()
    # saturation: every small kernel vector is an integer combination
    if basis:
        B = sympy.Matrix(basis).T
        for v in itertools.product(range(-2, 3), repeat=n):
            if all(sum(a * b for a, b in zip(row, v)) == 0 for row in A):
                sol, _ = B.gauss_jordan_solve(sympy.Matrix(v))
                assert all(c.is_integer for c in sol)


def test_lll_reduces_and_preserves_lattice():
    basis = [[1, 1, 1], [-1, 0, 2], [3, 5, 6]]
    out = lll_reduce(basis)
    assert abs(determinant(out)) == abs(determinant(basis))
    # each input vector is an integer combination of the output
    M = sympy.Matrix(out).T
    for v in basis:
        sol = M.solve(sympy.Matrix(v))
        assert all(c.is_integer for c in sol)
    assert max(sum(c * c for c in v) for v in out) <= max(sum(c * c for c in v) for v in basis)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=3, max_size=3))
def test_lll_lovasz_condition(basis):
    if determinant(basis) == 0:
        return
    out = lll_reduce(basis)
    assert abs(determinant(out)) == abs(determinant(basis))
    # size-reduced and Lovasz condition with delta = 3/4
    star, norms = [], []
    for b in out:
        v = [Fraction(c) for c in b]
        for s, nrm in zip(star, norms):
            mu = sum(Fraction(x) * y for x, y in zip(b, s)) / nrm
            assert abs(mu) <= Fraction(1, 2)
            v = [a - mu * c for a, c in zip(v, s)]
        star.append(v)
        norms.append(sum(c * c for c in v))
    for k in range(1, len(out)):
        mu = sum(Fraction(x) * y for x, y in zip(out[k], star[k - 1])) / norms[k - 1]
        assert norms[k] >= (Fraction(3, 4) - mu * mu) * norms[k - 1]


@pytest.mark.parametrize(
    "A, det",
    [([[4]], 4), ([[1, 2], [3, 4]], -2), ([[2, 0, 1], [1, 3, 2], [1, 1, 2]], 6), ([[2, 0, 1], [1, 3, 2], [1, 1, 1]], 0)],
)
def test_determinant(A, det):
    assert determinant(A) == det
    assert determinant(A) == int(sympy.Matrix(A).det())
