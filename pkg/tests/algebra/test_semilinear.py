"""
F_{q^m} 선형대수와 반선형 사상 테스트
"""
import random

import pytest

from app.algebra import semilinear as ff
from app.algebra.arith import field_tower
from app.algebra.semilinear import SemilinearMap, fixed_vector, fixed_vector_extending
from app.utils.errors import BudgetExhaustedError


def _random_matrix(rng: random.Random, size: int, order: int) -> list[list[int]]:
    return [[rng.randrange(order) for _ in range(size)] for _ in range(size)]


def test_null_space_dimension_and_vectors():
    F = field_tower(3, 1, 2).field
    rng = random.Random(7)
    for _ in range(20):
        A = _random_matrix(rng, 3, F.order)
        kernel = ff.null_space(F, A, 3)
        assert len(kernel) == 3 - ff.rank(F, A)
        for v in kernel:
            assert ff.mat_vec(F, A, v) == [0, 0, 0]


def test_compose_matches_sequential_application(tower_f4):
    rng = random.Random(11)
    for _ in range(20):
        phi = SemilinearMap.of(tower_f4, _random_matrix(rng, 2, 4), rng.randrange(2))
        psi = SemilinearMap.of(tower_f4, _random_matrix(rng, 2, 4), rng.randrange(2))
        x = [rng.randrange(4), rng.randrange(4)]
        assert phi.compose(psi).apply(x) == phi.apply(psi.apply(x))


def test_inverse_undoes_a_bijective_map(tower_f4):
    phi = SemilinearMap.of(tower_f4, [[0, 1], [1, 2]], power=1)
    assert phi.is_bijective()
    for a in range(4):
        for b in range(4):
            assert phi.inverse().apply(phi.apply([a, b])) == [a, b]


def test_fixed_vector_of_swap_over_f4(tower_f4):
    A = [[0, 1], [1, 0]]
    x = fixed_vector(tower_f4, A, 1)
    assert x is not None and any(x)
    assert ff.mat_vec(tower_f4.field, A, ff.frobenius_vector(tower_f4, x, 1)) == x


def test_fixed_vector_needs_the_cubic_extension(tower_f2):
    # A·σ(x) = x 는 F_2, F_4 에 해가 없고 F_8 에서 처음 풀린다 (x^3 + x + 1)
    A = [[0, 1], [1, 1]]
    target, x = fixed_vector_extending(tower_f2, A, 1, field_cap=4)
    assert target.m == 3
    rows = ff.embed_rows(tower_f2, target, A)
    assert ff.mat_vec(target.field, rows, ff.frobenius_vector(target, x, 1)) == x


def test_linear_map_without_eigenvalue_one_exhausts_budget(tower_f2):
    with pytest.raises(BudgetExhaustedError) as e:
        fixed_vector_extending(tower_f2, [[0, 1], [1, 1]], 0, field_cap=2)
    assert e.value.detail["stage"] == "field-extension"
