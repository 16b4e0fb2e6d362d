from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modcoh.linalg import (
    GF,
    QQ,
    FieldMismatch,
    Mat,
    NoSolution,
    NotInvertible,
    ShapeError,
    complement_projection,
    echelon_transform,
    echelonize,
    image_basis,
    kernel_basis,
    kronecker,
    rank,
    solve,
)


def small_matrices(max_rows=4, max_cols=4, lo=-3, hi=3):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_echelonize_identity():
    rref, piv, r = echelonize(Mat.identity(QQ, 2))
    assert rref == Mat.identity(QQ, 2) and piv == (0, 1) and r == 2


def test_echelonize_zero():
    rref, piv, r = echelonize(Mat.zeros(QQ, 3, 3))
    assert rref.is_zero() and piv == () and r == 0


def test_echelonize_rank_one():
    rref, piv, r = echelonize(Mat(QQ, [[1, 2], [2, 4]]))
    assert rref == Mat(QQ, [[1, 2], [0, 0]]) and r == 1 and piv == (0,)


def test_echelonize_fractions_lowest_terms():
    rref, _, _ = echelonize(Mat(QQ, [[2, 1], [4, 3]]))
    assert rref == Mat.identity(QQ, 2)
    x = QQ("6/4")
    assert (x.numerator, x.denominator) == (3, 2)
    assert QQ("3/-6") == QQ(Fraction(-1, 2)) and QQ("3/-6").denominator > 0


def test_kernel_identity_and_zero():
    assert kernel_basis(Mat.identity(QQ, 3)) == []
    ks = kernel_basis(Mat.zeros(QQ, 3, 3))
    assert [k.col(0) for k in ks] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_kernel_row():
    (k,) = kernel_basis(Mat(QQ, [[1, 1]]))
    assert k.col(0) == (QQ(-1), QQ(1))


def test_solve_examples():
    rhs = Mat(QQ, [[3], [-2]])
    assert solve(Mat.identity(QQ, 2), rhs) == rhs
    assert solve(Mat(QQ, [[2]]), Mat(QQ, [[1]])) == Mat(QQ, [["1/2"]])
    with pytest.raises(NoSolution):
        solve(Mat(QQ, [[1, 1], [1, 1]]), Mat(QQ, [[1], [0]]))
    with pytest.raises(ShapeError):
        solve(Mat.identity(QQ, 2), Mat(QQ, [[1]]))


def test_kronecker_examples():
    m = Mat(QQ, [[1, 2], [3, 4]])
    assert kronecker(Mat(QQ, [[5]]), m) == m.scale(5)
    assert kronecker(Mat.identity(QQ, 2), Mat.identity(QQ, 3)) == Mat.identity(QQ, 6)
    n = Mat(QQ, [[0, 1], [0, 0]])
    k = kronecker(n, n)
    nonzero = [(i, j) for i in range(4) for j in range(4) if k[i, j]]
    # a[0,1] b[0,1] lands at row 0*2+0, column 1*2+1
    assert nonzero == [(0, 3)]


def test_kronecker_index_convention():
    a = Mat(QQ, [[1, 2], [3, 4]])
    b = Mat(QQ, [[5, 6, 7], [8, 9, 10]])
    k = kronecker(a, b)
    for i in range(2):
        for j in range(2):
            for r in range(2):
                for c in range(3):
                    assert k[i * b.rows + r, j * b.cols + c] == a[i, j] * b[r, c]


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        Mat.identity(QQ, 2) + Mat.identity(GF(5), 2)
    with pytest.raises(FieldMismatch):
        kronecker(Mat.identity(QQ, 1), Mat.identity(GF(3), 1))
    with pytest.raises(FieldMismatch):
        Mat(QQ, [[0.5]])


def test_prime_field_arithmetic():
    f = GF(7)
    m = Mat(f, [[3, 5], [1, 2]])
    assert m @ m.inverse() == Mat.identity(f, 2)
    assert f(Fraction(1, 2)) == 4
    assert rank(Mat(f, [[1, 2], [4, 1]])) == 1  # second row = 4 * first mod 7
    with pytest.raises(NotInvertible):
        Mat(f, [[1, 2], [4, 1]]).inverse()


def test_shape_errors():
    with pytest.raises(ShapeError):
        Mat.identity(QQ, 2) @ Mat.identity(QQ, 3)
    with pytest.raises(ShapeError):
        Mat(QQ, [[1, 2], [3]])


def test_image_basis_coordinates():
    m = Mat(QQ, [[1, 2], [2, 4], [0, 1]])
    basis, piv = image_basis(m)
    assert basis.cols == 2
    for v in m.columns():
        coords = tuple(v[p] for p in piv)
        assert basis.apply(coords) == v


def test_complement_projection_leftmost():
    rel = Mat(QQ, [[1], [-1], [0]])  # e0 - e1
    proj, kept = complement_projection(rel)
    assert kept == (0, 2)
    assert (proj @ rel).is_zero()
    assert proj.submatrix(range(2), kept) == Mat.identity(QQ, 2)


@settings(max_examples=60, deadline=None)
@given(small_matrices(), small_matrices(3, 3))
def test_rank_of_kronecker_is_product(a, b):
    ma, mb = Mat(QQ, a), Mat(QQ, b)
    assert rank(kronecker(ma, mb)) == rank(ma) * rank(mb)


@settings(max_examples=60, deadline=None)
@given(small_matrices(5, 5))
def test_echelon_round_trip(a):
    m = Mat(QQ, a)
    rref, piv, t = echelon_transform(m)
    assert t @ m == rref
    assert t.inverse() @ rref == m
    assert echelonize(m)[0] == rref
    # reduced form: pivot columns are unit vectors
    for r, c in enumerate(piv):
        assert rref.col(c) == tuple(QQ(1) if i == r else QQ(0) for i in range(m.rows))


@settings(max_examples=60, deadline=None)
@given(small_matrices(4, 6))
def test_kernel_dimension_and_annihilation(a):
    m = Mat(QQ, a)
    ks = kernel_basis(m)
    assert len(ks) == m.cols - rank(m)
    for k in ks:
        assert (m @ k).is_zero()


@settings(max_examples=60, deadline=None)
@given(small_matrices(4, 4), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_solve_consistent_systems(a, x):
    m = Mat(QQ, a)
    x = Mat.column(QQ, tuple(QQ(v) for v in x[: m.cols]))
    rhs = m @ x
    y = solve(m, rhs)
    assert m @ y == rhs


@settings(max_examples=40, deadline=None)
@given(small_matrices(4, 4, -6, 6))
def test_prime_field_rank_le_rational_rank(a):
    assert rank(Mat(GF(5), a)) <= rank(Mat(QQ, a))


@given(st.integers(-50, 50), st.integers(1, 50), st.integers(-50, 50), st.integers(1, 50))
def test_exact_add_sub(p, q, r, s):
    a, b = QQ(Fraction(p, q)), QQ(Fraction(r, s))
    assert a + b - b == a
