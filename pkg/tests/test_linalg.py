from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jordan_double.linalg import (Echelon, Matrix, NotInvertible, Subspace, algebra_radical, format_rational,
                                  generalized_eigenspace, inverse, kernel, parse_rational, rank, solve)
from jordan_double.modules import build_S, build_simple
from jordan_double.homology import hom_space


def naive_rank(rows):
    """Textbook Gauss-Jordan on a copy; independent of the library's elimination."""
    m = [[Fraction(v) for v in r] for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


small_matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)))


def test_kernel_examples():
    assert kernel(Matrix.identity(3)).dim == 0
    assert kernel(Matrix.zeros(2, 3)).dim == 3
    K = kernel(Matrix.from_rows([[1, 2], [2, 4]]))
    assert K.dim == 1
    assert K == Subspace(2, [(-2, 1)])


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_kernel_rank_nullity(rows):
    A = Matrix.from_rows(rows)
    K = kernel(A)
    assert rank(A) == naive_rank(rows)
    assert rank(A) + K.dim == A.cols
    for v in K.basis:
        assert all(x == 0 for x in A @ v)


def test_solve_examples():
    b = (Fraction(3), Fraction(-1, 2), Fraction(7))
    assert tuple(solve(Matrix.identity(3), b)) == b
    x = solve(Matrix.from_rows([[1, 1]]), (2,))
    assert x[0] + x[1] == 2
    assert solve(Matrix.from_rows([[1, 1], [1, 1]]), (1, 2)) is None
    with pytest.raises(ValueError):
        solve(Matrix.identity(2), (1, 2, 3))


@settings(max_examples=100, deadline=None)
@given(small_matrices, st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_solve_consistent_systems(rows, xs):
    A = Matrix.from_rows(rows)
    x0 = xs[:A.cols]
    b = A @ x0
    x = solve(A, b)
    assert x is not None and tuple(A @ x) == tuple(b)


def test_inverse_examples():
    assert inverse(Matrix.identity(3)) == Matrix.identity(3)
    assert inverse(Matrix.from_rows([[1, 1], [0, 1]])) == Matrix.from_rows([[1, -1], [0, 1]])
    g = build_S(2, 1).g
    gi = inverse(g)
    assert g @ gi == Matrix.identity(g.rows) == gi @ g
    with pytest.raises(NotInvertible, match="not invertible"):
        inverse(Matrix.from_rows([[1, 2], [2, 4]]))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse_property(rows):
    A = Matrix.from_rows(rows)
    if naive_rank(rows) < 3:
        with pytest.raises(NotInvertible):
            inverse(A)
    else:
        assert inverse(A) @ A == Matrix.identity(3)


def test_generalized_eigenspace_examples():
    assert generalized_eigenspace(Matrix.diagonal([1, 2]), 1) == Subspace(2, [(1, 0)])
    J = Matrix.from_rows([[3, 1], [0, 3]])
    assert generalized_eigenspace(J, 3).dim == 2
    xi = build_simple(2).xi
    assert generalized_eigenspace(xi, 0) == Subspace(3, [(0, 1, 0)])


def test_generalized_eigenspaces_sum_to_whole():
    xi = build_S(3, 1).xi
    spaces = [generalized_eigenspace(xi, k) for k in range(-8, 9)]
    total = Subspace(xi.rows, [])
    for s in spaces:
        assert s.includes(Subspace(s.ambient_dim, [xi @ v for v in s.basis]))
        total = total + s
    assert total.dim == xi.rows


def test_algebra_radical_examples():
    assert algebra_radical([Matrix.identity(2)]).dim == 0
    N = Matrix.from_rows([[0, 1], [0, 0]])
    R = algebra_radical([Matrix.identity(2), N])
    assert R == Subspace(2, [(0, 1)])
    E = hom_space(build_S(1, 1), build_S(1, 1))
    assert E.dim == 2
    assert algebra_radical(E.basis).dim == 1


def test_radical_is_nilpotent_ideal():
    E = hom_space(build_S(2, 1), build_S(2, 1)).basis
    R = algebra_radical(E)
    span = Subspace(len(E[0].entries), [m.entries for m in E])
    for coeffs in R.basis:
        r = sum((b.scale(c) for b, c in zip(E, coeffs)), Matrix.zeros(*E[0].shape))
        assert r.is_nilpotent()
        for b in E:
            assert span.contains((r @ b).entries)


def test_echelon_incremental():
    e = Echelon(3)
    assert e.add((1, 2, 3))
    assert not e.add((2, 4, 6))
    assert e.add({2: 1})
    assert e.contains((1, 2, 4))
    assert len(e) == 2


def test_rational_strings():
    for v in [Fraction(0), Fraction(5), Fraction(-7, 3), Fraction(1, 2)]:
        assert parse_rational(format_rational(v)) == v
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 2)) == "-1/2"
    with pytest.raises(ValueError):
        parse_rational("1/0")


def test_kron_and_transpose():
    A = Matrix.from_rows([[1, 2], [3, 4]])
    B = Matrix.identity(2)
    K = A.kron(B)
    assert K.shape == (4, 4)
    for (i, j, k, l) in product(range(2), repeat=4):
        assert K[2 * i + k, 2 * j + l] == A[i, j] * B[k, l]
    assert A.T.T == A and A.T[0, 1] == 3
