from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from exactcat import _kernels_py, kernels
from exactcat.linalg import determinant, kernel_basis, rank, smith_normal_form, solve_linear
from exactcat.matrix import Matrix, block_diag, hstack, vstack
from exactcat.rings import GF, QQ, ZZ, BaseRing


def int_matrices(max_dim=6, lo=-9, hi=9):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=m, max_size=m)))


# rings --------------------------------------------------------------------------------------------

def test_ring_parse_roundtrip():
    assert BaseRing.parse("Z") == ZZ
    assert BaseRing.parse("Q") == QQ
    assert BaseRing.parse("Fp 5") == GF(5)
    with pytest.raises(ValueError):
        BaseRing.parse("Fp 6")
    with pytest.raises(ValueError):
        BaseRing.parse("R")


def test_scalars():
    assert QQ.parse_scalar("1/2") == Fraction(1, 2)
    assert GF(5)(7) == 2
    assert GF(5).inverse(2) == 3
    assert ZZ.is_unit(-1) and not ZZ.is_unit(2)
    with pytest.raises(ValueError):
        ZZ.parse_scalar("1/2")


# matrices ---------------------------------------------------------------------------------------

def test_literal_roundtrip():
    M = Matrix.parse(QQ, "1,0;1/2,3")
    assert M.shape == (2, 2)
    assert Matrix.parse(QQ, M.literal()) == M
    E = Matrix.zeros(ZZ, 0, 3)
    assert Matrix.parse(ZZ, E.literal(), 0, 3) == E


def test_parse_shape_error():
    with pytest.raises(ValueError):
        Matrix.parse(ZZ, "1,2;3", None, None)
    with pytest.raises(ValueError):
        Matrix.parse(ZZ, "1,2", 2, 1)


def test_stacking():
    A = Matrix(ZZ, [[1, 2]])
    B = Matrix(ZZ, [[3]])
    assert hstack(ZZ, [A, B], 1) == Matrix(ZZ, [[1, 2, 3]])
    assert vstack(ZZ, [A, Matrix(ZZ, [[4, 5]])], 2).shape == (2, 2)
    assert block_diag(ZZ, [A, B]) == Matrix(ZZ, [[1, 2, 0], [0, 0, 3]])


# Smith normal form ------------------------------------------------------------------------------

def _check_snf(M):
    d = smith_normal_form(M)
    m, n = M.shape
    assert d.U @ d.S @ d.V == M
    assert d.P @ M @ d.Q == d.S
    assert d.P @ d.U == Matrix.identity(M.ring, m)
    assert d.Q @ d.V == Matrix.identity(M.ring, n)
    inv = d.invariants
    assert all(M.ring.divides(inv[k], inv[k + 1]) for k in range(len(inv) - 1))
    return d


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_snf_integer_property(rows):
    M = Matrix(ZZ, rows)
    d = _check_snf(M)
    assert all(x > 0 for x in d.invariants)


@settings(max_examples=80, deadline=None)
@given(int_matrices(5, 0, 4))
def test_snf_mod_p_property(rows):
    M = Matrix(GF(5), rows)
    d = _check_snf(M)
    assert all(x == 1 for x in d.invariants)


@settings(max_examples=60, deadline=None)
@given(int_matrices(4))
def test_snf_rational_property(rows):
    M = Matrix(QQ, [[Fraction(v, 2) for v in r] for r in rows])
    _check_snf(M)


def _minors_gcd(rows, k):
    # independent oracle: d_1 ... d_k = gcd of all k x k minors
    from itertools import combinations
    from math import gcd

    def det(a):
        if len(a) == 1:
            return a[0][0]
        return sum((-1) ** j * a[0][j] * det([r[:j] + r[j + 1:] for r in a[1:]]) for j in range(len(a)))

    g = 0
    m, n = len(rows), len(rows[0])
    for R in combinations(range(m), k):
        for C in combinations(range(n), k):
            g = gcd(g, det([[rows[i][j] for j in C] for i in R]))
    return g


@settings(max_examples=60, deadline=None)
@given(int_matrices(4))
def test_snf_matches_determinantal_divisors(rows):
    d = smith_normal_form(Matrix(ZZ, rows))
    prod = 1
    for k in range(1, min(len(rows), len(rows[0])) + 1):
        prod *= d.diag[k - 1]
        assert prod == _minors_gcd(rows, k)


def test_snf_known():
    d = smith_normal_form(Matrix(ZZ, [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]))
    assert d.invariants == (2, 6, 12)


@pytest.mark.skipif(kernels.BACKEND != "compiled", reason="compiled extension not built")
@settings(max_examples=120, deadline=None)
@given(int_matrices(7))
def test_compiled_matches_python(rows):
    from exactcat import _kernels
    m, n = len(rows), len(rows[0])
    assert _kernels.smith_int(rows, m, n) == _kernels_py.smith_int(rows, m, n)
    red = [[v % 7 for v in r] for r in rows]
    assert _kernels.smith_mod_p(red, m, n, 7) == _kernels_py.smith_mod_p(red, m, n, 7)


# solving ----------------------------------------------------------------------------------------

def test_solve_and_kernel():
    A = Matrix(ZZ, [[2, 0], [0, 3]])
    x = solve_linear(A, Matrix(ZZ, [[4], [9]]))
    assert A @ x == Matrix(ZZ, [[4], [9]])
    assert not solve_linear(A, Matrix(ZZ, [[1], [0]]))
    K = kernel_basis(Matrix(ZZ, [[1, 2, 3]]))
    assert K.shape == (3, 2)
    assert (Matrix(ZZ, [[1, 2, 3]]) @ K).is_zero()


@settings(max_examples=80, deadline=None)
@given(int_matrices(5, -3, 3))
def test_rank_nullity(rows):
    A = Matrix(QQ, rows)
    assert rank(A) + kernel_basis(A).ncols == A.ncols


def test_determinant():
    assert determinant(Matrix(ZZ, [[1, 2], [3, 4]])) == -2
    assert determinant(Matrix(GF(3), [[1, 2], [2, 1]])) == 0
