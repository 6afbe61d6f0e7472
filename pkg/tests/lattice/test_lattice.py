"""
격자 정규형, 상대 위치, 쌍대, 열거 테스트
"""
import random

import pytest

from app.algebra import matrix as mx
from app.algebra.arith import LaurentPoly
from app.algebra.coweight import Coweight
from app.lattice.lattice import (
    Lattice,
    SymplecticForm,
    adapted_basis,
    colength,
    dual,
    enumerate_lattices,
    intersection,
    is_selfdual_up_to_scalar,
    lattice_sum,
    normalize,
    relative_position,
    relative_position_elimination,
)
from app.utils.errors import InvalidInputError


def test_unimodular_change_of_basis_normalizes_to_standard(tower_f2):
    T = tower_f2
    one, t = LaurentPoly.one(T), LaurentPoly.t(T)
    g = mx.as_matrix([[one, t], [LaurentPoly.zero(T), one + t]])
    assert normalize(g) == Lattice.standard(T, 2)


def test_normal_form_is_lower_triangular_with_monomial_diagonal(tower_f3):
    T = tower_f3
    t = LaurentPoly.t(T)
    g = mx.as_matrix([[t, LaurentPoly.one(T)], [LaurentPoly.zero(T), t]])
    M = normalize(g)
    assert mx.is_lower_triangular(M.basis)
    assert sorted(M.exponents) == [0, 2]
    assert M.volume == 2


def test_singular_columns_are_rejected(tower_f2):
    one = LaurentPoly.one(tower_f2)
    with pytest.raises(InvalidInputError):
        normalize(mx.as_matrix([[one, one], [one, one]]))


def test_relative_position_of_diagonal(tower_f2):
    L0 = Lattice.standard(tower_f2, 2)
    M = Lattice.diagonal(tower_f2, [0, 2])
    assert relative_position(L0, M) == Coweight.of([2, 0])
    assert relative_position(M, L0) == Coweight.of([0, -2])
    assert colength(L0, M) == 2


def test_relative_position_methods_agree_in_window(tower_f2):
    rng = random.Random(3)
    lattices = list(enumerate_lattices(tower_f2, 2, 1))
    for _ in range(40):
        A, B = rng.choice(lattices), rng.choice(lattices)
        assert relative_position(A, B) == relative_position_elimination(A, B)


def test_adapted_basis_reproduces_target(tower_f4):
    T = tower_f4
    L0 = Lattice.standard(T, 2)
    t = LaurentPoly.t(T)
    M = normalize(mx.as_matrix([[t, LaurentPoly.monomial(T, 0, 2)], [LaurentPoly.zero(T), t]]))
    P, mu = adapted_basis(L0, M)
    assert normalize(P) == L0
    assert normalize(mx.mat_mul(P, mx.diagonal(T, mu.ints()))) == M


def test_sum_and_intersection_of_diagonals(tower_f2):
    A = Lattice.diagonal(tower_f2, [0, 0])
    B = Lattice.diagonal(tower_f2, [-1, 1])
    assert lattice_sum(A, B) == Lattice.diagonal(tower_f2, [-1, 0])
    assert intersection(A, B) == Lattice.diagonal(tower_f2, [0, 1])


def test_standard_dual_is_involutive(tower_f3):
    for M in list(enumerate_lattices(tower_f3, 2, 1))[:30]:
        assert dual(dual(M)) == M


def test_symplectic_dual_of_scaled_standard(tower_f2):
    J = SymplecticForm.standard(tower_f2, 1)
    L0 = Lattice.standard(tower_f2, 2)
    assert is_selfdual_up_to_scalar(L0, J) == 0
    assert is_selfdual_up_to_scalar(L0.scale(1), J) == -2
    assert is_selfdual_up_to_scalar(Lattice.diagonal(tower_f2, [1, 0]), J) == -1


def test_enumeration_count(tower_f2):
    # 대각 (a_0, a_1) ∈ [-1, 1]^2, 대각 아래 성분은 지수 [-1, a_1) 의 다항식
    assert len(list(enumerate_lattices(tower_f2, 1, 1))) == 3
    assert len(list(enumerate_lattices(tower_f2, 2, 1))) == 3 * (1 + 2 + 4)
    assert all(M.volume == 0 for M in enumerate_lattices(tower_f2, 2, 1, total=0))


def test_symplectic_form_must_be_alternating(tower_f3):
    with pytest.raises(InvalidInputError):
        SymplecticForm.of(tower_f3, [[0, 1], [1, 0]])
