"""
O_L 행렬 연산 테스트
"""
import pytest

from app.algebra import matrix as mx
from app.algebra.arith import LaurentPoly
from app.utils.errors import InvalidInputError


def _m(T, rows):
    """정수 지수 표기: None 은 0, k 는 t^k"""
    z = LaurentPoly.zero(T)
    return mx.as_matrix([[z if e is None else LaurentPoly.t(T, e) for e in r] for r in rows])


def test_det_of_monomial_matrix(tower_f2):
    A = _m(tower_f2, [[None, 1], [2, None]])
    assert mx.det(A) == LaurentPoly.t(tower_f2, 3)


def test_minor_valuations_are_elementary_divisor_sums(tower_f3):
    # [[t, 1], [0, t]] 의 기본 약수 (1, t^2)
    A = _m(tower_f3, [[1, 0], [None, 1]])
    assert mx.minor_valuations(A) == [0, 2]


def test_inverse_with_monomial_determinant(tower_f3):
    T = tower_f3
    A = _m(T, [[0, 1], [-1, 0]])
    B = mx.mat_add(A, _m(T, [[None, None], [None, 0]]))     # [[1, t], [t^-1, 2]]
    inv = mx.inverse(B)
    assert mx.mat_mul(B, inv) == mx.identity(T, 2)


def test_lower_triangular_inverse_is_exact(tower_f2):
    T = tower_f2
    A = _m(T, [[2, None], [-1, 1]])
    inv = mx.lower_triangular_inverse(A)
    assert mx.mat_mul(A, inv) == mx.identity(T, 2)
    assert mx.mat_mul(inv, A) == mx.identity(T, 2)


def test_inverse_of_non_monomial_determinant_needs_precision(tower_f2):
    T = tower_f2
    A = mx.as_matrix([
        [LaurentPoly.one(T) + LaurentPoly.t(T), LaurentPoly.t(T)],
        [LaurentPoly.zero(T) + LaurentPoly.t(T, 2), LaurentPoly.one(T)],
    ])
    with pytest.raises(InvalidInputError):
        mx.inverse(A)
    inv = mx.inverse(A, precision=6)
    product = mx.mat_mul(A, inv)
    for i in range(2):
        for j in range(2):
            diff = product[i][j] - (1 if i == j else 0)
            assert diff.is_zero()


def test_singular_matrix_has_no_inverse(tower_f2):
    A = _m(tower_f2, [[0, 0], [0, 0]])
    with pytest.raises(InvalidInputError):
        mx.inverse(A)


def test_residue_requires_integral_matrix(tower_f2):
    assert mx.residue(_m(tower_f2, [[0, 1], [None, 0]])) == [[1, 0], [0, 1]]
    with pytest.raises(InvalidInputError):
        mx.residue(_m(tower_f2, [[-1, None], [None, 0]]))
