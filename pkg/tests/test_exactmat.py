import random

import pytest
from sympy import Matrix

from src.errors import DimensionError, DomainError
from src.exactmat import (Echelon, IntMatrix, det, gcd_maximal_minors, hermite_form, in_row_span,
                          kernel_basis, primitive_part, rank)
from src.generators import decagon_sign_matrix


def _random_matrix(rng, rows, cols, lo=-5, hi=5):
    return IntMatrix.from_rows([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)], cols=cols)


def test_det_examples():
    assert det(IntMatrix.identity(2)) == 1
    assert det(IntMatrix.from_rows([[1, 2], [3, 4]])) == -2
    vandermonde = IntMatrix.from_rows([[1, 1, 1], [0, 2, 3], [0, 4, 9]])
    assert det(vandermonde) == 6
    assert det(IntMatrix(0, 0, ())) == 1


def test_det_non_square():
    with pytest.raises(DimensionError):
        det(IntMatrix.from_rows([[1, 2, 3]]))


def test_det_matches_sympy():
    rng = random.Random(11)
    for _ in range(1000):
        k = rng.randint(1, 4)
        M = _random_matrix(rng, k, k)
        assert det(M) == int(Matrix(M.to_rows()).det())


def test_det_needs_row_swap():
    assert det(IntMatrix.from_rows([[0, 1], [1, 0]])) == -1
    assert det(IntMatrix.from_rows([[0, 0, 1], [0, 2, 0], [3, 0, 0]])) == -6


def test_rank_examples():
    assert rank(IntMatrix.zeros(2, 3)) == 0
    assert rank(IntMatrix.from_rows([[1, 1, 1, 1], [0, 1, 2, 3]])) == 2


def test_rank_of_decagon_sign_matrix():
    S = decagon_sign_matrix()
    assert rank(IntMatrix.from_rows(S.entries)) == 7


def test_rank_matches_sympy():
    rng = random.Random(12)
    for _ in range(300):
        M = _random_matrix(rng, rng.randint(1, 5), rng.randint(1, 6), -2, 2)
        assert rank(M) == Matrix(M.to_rows()).rank()


def test_kernel_basis_twisted_cubic():
    M = IntMatrix.from_rows([[1, 1, 1, 1], [0, 1, 2, 3]])
    K = kernel_basis(M)
    assert (K.rows, K.cols) == (4, 2)
    assert M.matmul(K).is_zero()
    expected = [(1, -2, 1, 0), (0, 1, -2, 1)]
    both = IntMatrix.from_columns(K.columns() + expected)
    assert rank(both) == 2
    assert gcd_maximal_minors(K) == 1


def test_kernel_basis_trivial_cases():
    assert kernel_basis(IntMatrix.identity(2)).cols == 0
    assert kernel_basis(IntMatrix.from_rows([[1, 1]])).columns() in ([(1, -1)], [(-1, 1)])


def test_kernel_basis_properties():
    rng = random.Random(13)
    for _ in range(200):
        M = _random_matrix(rng, rng.randint(1, 4), rng.randint(1, 7), -4, 4)
        K = kernel_basis(M)
        assert K.rows == M.cols
        assert K.cols == M.cols - rank(M) == len(Matrix(M.to_rows()).nullspace())
        if K.cols:
            assert M.matmul(K).is_zero()
            assert rank(K) == K.cols
            assert gcd_maximal_minors(K) == 1
            for col in K.columns():
                assert primitive_part(col) == col


def test_hermite_form_is_unimodular():
    rng = random.Random(14)
    for _ in range(100):
        M = _random_matrix(rng, rng.randint(1, 5), rng.randint(1, 4))
        H, U = hermite_form(M.to_rows(), M.cols)
        assert abs(det(IntMatrix.from_rows(U))) == 1
        assert IntMatrix.from_rows(U).matmul(M) == IntMatrix.from_rows(H, cols=M.cols)


def test_hermite_form_zero_pivot():
    H, U = hermite_form([[0, 2], [3, 4]], 2)
    assert H == [[3, 0], [0, 2]]
    assert U == [[-2, 1], [1, 0]]


def test_gcd_maximal_minors_examples():
    assert gcd_maximal_minors(IntMatrix.from_rows([[1, 0], [-2, 1], [1, -2], [0, 1]])) == 1
    assert gcd_maximal_minors(IntMatrix.from_rows([[2], [-2], [0]])) == 2
    assert gcd_maximal_minors(IntMatrix.from_rows([[1, 2], [2, 4], [3, 6]])) == 0


def test_gcd_maximal_minors_wide_matrix():
    with pytest.raises(DimensionError):
        gcd_maximal_minors(IntMatrix.from_rows([[1, 2, 3]]))


def test_primitive_part():
    assert primitive_part((2, -6, 6, -2)) == (1, -3, 3, -1)
    assert primitive_part((1, -2, 1, 0)) == (1, -2, 1, 0)
    assert primitive_part((0, 0, 5)) == (0, 0, 1)
    assert primitive_part(primitive_part((4, -8, 12))) == primitive_part((4, -8, 12))
    with pytest.raises(DomainError):
        primitive_part((0, 0, 0))


def test_in_row_span():
    A = IntMatrix.from_rows([[1, 0], [0, 1]])
    assert in_row_span(A, [1, 1])
    assert not in_row_span(IntMatrix.from_rows([[1, 2]]), [1, 1])


def test_echelon_tracks_independence():
    e = Echelon(3)
    e = e.extend((1, 2, 3))
    e = e.extend((0, 1, 1))
    assert e.rank == 2
    assert e.extend((2, 5, 7)) is None
    assert e.extend((0, 0, 1)).rank == 3
    with pytest.raises(DimensionError):
        e.extend((1, 2))


def test_from_columns_and_transpose():
    M = IntMatrix.from_columns([(1, 2), (3, 4), (5, 6)])
    assert M.to_rows() == [[1, 3, 5], [2, 4, 6]]
    assert M.transpose().to_rows() == [[1, 2], [3, 4], [5, 6]]
    assert IntMatrix.from_columns([], rows=4).rows == 4
