"""
원형 반선형 도표의 직선 모음 풀이 테스트
"""
import random
from itertools import product

import pytest

from app.algebra import semilinear as ff
from app.algebra.arith import field_tower
from app.incidence.diagram import (
    CircularDiagram,
    canonical_witness,
    change_basis,
    in_U_r,
    rank_profile,
    validate,
)
from app.incidence.solver import (
    brute_force_lines,
    semilinear_eigenline,
    solve_lines,
    verify_lines,
)
from app.models.search import SearchConfig
from app.utils.errors import BudgetExhaustedError, InvalidInputError


def _random_invertible(rng: random.Random, field, m: int) -> list[list[int]]:
    while True:
        g = [[rng.randrange(field.order) for _ in range(m)] for _ in range(m)]
        if ff.rank(field, g) == m:
            return g


def test_canonical_witness_is_in_open_locus(tower_f4):
    D = canonical_witness(tower_f4, [1, 1], m=2)
    assert validate(D) == (1, 1)
    assert in_U_r(D)
    sol = solve_lines(D)
    assert verify_lines(D, sol.lines) is None
    assert sol.field_degree == 2


def test_random_changes_of_basis_stay_solvable(tower_f4):
    rng = random.Random(42)
    field = tower_f4.field
    for _ in range(25):
        f = rng.randint(1, 3)
        m = rng.randint(1, 3)
        r = [rng.randint(0, m) for _ in range(f)]
        D = canonical_witness(tower_f4, r, m)
        g = [_random_invertible(rng, field, m) for _ in range(f)]
        E = change_basis(D, g)
        assert rank_profile(E) == tuple(r)
        sol = solve_lines(E, SearchConfig(field_cap=4))
        assert verify_lines(E.embed(sol.tower), sol.lines) is None, (r, m)


def test_nilpotent_single_node_outside_open_locus(tower_f4):
    # φ(x) = (σ(x_2), 0), ψ(x) = (σ^{-1}(x_2), 0): 해는 e_1 하나
    nil = [[0, 1], [0, 0]]
    D = CircularDiagram.of(tower_f4, [nil], [nil], [1], [-1])
    assert not in_U_r(D)
    sol = solve_lines(D)
    assert sol.lines == ((1, 0),)
    assert brute_force_lines(D) == [((1, 0),)]


def test_psi_bijective_reduction_recovers_all_nodes(tower_f4):
    D = canonical_witness(tower_f4, [0, 2, 1], m=2)
    sol = solve_lines(D)
    assert len(sol.lines) == 3
    assert verify_lines(D.embed(sol.tower), sol.lines) is None
    assert any("reduce" in note for note in sol.transcript)


def test_solver_agrees_with_brute_force_existence(tower_f4):
    D = canonical_witness(tower_f4, [1, 0], m=2)
    assert brute_force_lines(D)
    sol = solve_lines(D)
    assert verify_lines(D.embed(sol.tower), sol.lines) is None


def test_composition_condition_is_checked(tower_f4):
    ident = [[1, 0], [0, 1]]
    D = CircularDiagram.of(tower_f4, [ident], [ident], [1], [-1])
    with pytest.raises(InvalidInputError) as e:
        validate(D)
    assert e.value.detail == {"index": 0}


def test_verify_reports_first_failing_index(tower_f4):
    D = canonical_witness(tower_f4, [1, 1], m=2)
    assert verify_lines(D, [(1, 0), (0, 1)]) == 1
    assert verify_lines(D, [(1, 0), (1, 0)]) is None


def test_linear_eigenline_needs_quadratic_extension():
    F2 = field_tower(2, 1, 1)
    A = [[0, 1], [1, 1]]
    target, x = semilinear_eigenline(F2, A, 0, SearchConfig(field_cap=4))
    assert target.m == 2
    with pytest.raises(BudgetExhaustedError) as e:
        semilinear_eigenline(F2, A, 0, SearchConfig(field_cap=1))
    assert "need not exist" in e.value.message


def _composable_links(tower, m: int) -> list[tuple]:
    """F_2 성분 (φ, ψ) 중 ψφ = φψ = 0 인 쌍 (σ = 1, τ = -1)"""
    mats = [
        [list(bits[i * m:(i + 1) * m]) for i in range(m)]
        for bits in product((0, 1), repeat=m * m)
    ]
    out = []
    for A in mats:
        for B in mats:
            try:
                validate(CircularDiagram.of(tower, [A], [B], [1], [-1]))
            except InvalidInputError:
                continue
            out.append((A, B))
    return out


def test_every_small_diagram_over_f2_is_solvable(tower_f4):
    cfg = SearchConfig(field_cap=4)
    count = 0
    for m, expected in ((1, 3), (2, 40)):
        links = _composable_links(tower_f4, m)
        assert len(links) == expected
        for f in (1, 2):
            for picked in product(links, repeat=f):
                D = CircularDiagram.of(
                    tower_f4, [a for a, _ in picked], [b for _, b in picked], [1] * f, [-1] * f
                )
                sol = solve_lines(D, cfg)
                assert sol.tower.m <= 4
                assert verify_lines(D.embed(sol.tower), sol.lines) is None, picked
                if sol.tower is D.tower:
                    assert brute_force_lines(D)
                count += 1
    assert count == 1652


@pytest.mark.parametrize("f", [1, 2, 3, 4])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_canonical_witness_is_solved_by_an_eigenline(tower_f2, f, m):
    for r in product(range(1, m + 1), repeat=f):
        D = canonical_witness(tower_f2, list(r), m)
        assert in_U_r(D)
        sol = solve_lines(D)
        assert verify_lines(D.embed(sol.tower), sol.lines) is None, r
        assert any("eigenline" in note for note in sol.transcript), (r, sol.transcript)
