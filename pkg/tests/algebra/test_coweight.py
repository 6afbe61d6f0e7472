"""
여무게 조합론 테스트 (지배 순서, Newton 블록, [ν̃], 다각형)
"""
from fractions import Fraction
from itertools import combinations_with_replacement, product

import pytest

from app.algebra.coweight import (
    Coweight,
    decomposable_wrt,
    dominance_leq,
    dominant_below,
    gsp_defect,
    integral_points_conv,
    is_minuscule,
    is_minuscule_weight_r,
    kappa_levi,
    levi_dominance_leq,
    minimal_dominant_above,
    newton_blocks,
    nu_tilde,
    omega,
    polygon_vertices,
)
from app.utils.errors import InvalidInputError


def _newton_vectors(n: int, max_den: int) -> list[Coweight]:
    slopes = sorted({Fraction(a, d) for d in range(1, max_den + 1) for a in range(0, d + 1)}, reverse=True)
    out = []
    for combo in combinations_with_replacement(slopes, n):
        nu = Coweight.of(sorted(combo, reverse=True))
        try:
            newton_blocks(nu)
        except InvalidInputError:
            continue
        out.append(nu)
    return out


def _dominant_window(n: int, bound: int) -> list[Coweight]:
    return [
        Coweight.of(v) for v in product(range(bound, -bound - 1, -1), repeat=n)
        if all(a >= b for a, b in zip(v, v[1:]))
    ]


def test_dominance_examples():
    assert dominance_leq(["1/2", "1/2"], [1, 0])
    assert not dominance_leq([1, 0], ["1/2", "1/2"])
    assert not dominance_leq([1, 0], [1, 1])          # 총합이 다름
    with pytest.raises(InvalidInputError):
        dominance_leq([0, 1], [1, 0])


def test_newton_blocks_rejects_fractional_block_degree():
    assert newton_blocks(["3/2", "3/2", 1]) == ((2, 1), (Fraction(3, 2), Fraction(1)))
    with pytest.raises(InvalidInputError):
        newton_blocks(["1/2", 0])


def test_minimal_dominant_above_is_the_brute_force_minimum():
    # n ≤ 4, 분모 ≤ 4, 창 |μ_i| ≤ 3
    for n in range(1, 5):
        window = _dominant_window(n, 3)
        for nu in _newton_vectors(n, 4):
            above = [mu for mu in window if dominance_leq(nu, mu)]
            best = minimal_dominant_above(nu)
            assert best in above
            for mu in above:
                assert dominance_leq(best, mu), (nu, best, mu)


def test_nu_tilde_keeps_block_degrees():
    nu = Coweight.of(["2/3", "2/3", "2/3", 0])
    assert nu_tilde(nu) == Coweight.of([1, 1, 0, 0])
    assert kappa_levi(nu_tilde(nu), (3, 1)) == kappa_levi(nu, (3, 1))


def test_decomposable_checks_newton_break_points():
    nu = ["3/2", "3/2", 1]
    assert decomposable_wrt([2, 1, 1], nu)
    assert not decomposable_wrt([2, 2, 0], nu)


def test_levi_dominance_needs_zero_boundary_coefficients():
    assert levi_dominance_leq([1, 0, 0], [1, 0, 0], (1, 2))
    assert levi_dominance_leq([1, 0, 0], [1, 1, -1], (1, 2))
    assert not levi_dominance_leq([0, 1, 0], [1, 0, 0], (1, 2))


def test_dominant_below_matches_filter():
    mu = Coweight.of([2, 0, -1])
    expected = {lam for lam in _dominant_window(3, 2) if dominance_leq(lam, mu)}
    assert set(dominant_below(mu)) == expected


def test_integral_points_of_omega_1():
    points = integral_points_conv([1, 0, 0])
    assert set(points) == {Coweight.of(v) for v in ([1, 0, 0], [0, 1, 0], [0, 0, 1])}


def test_minuscule_predicates():
    assert is_minuscule([2, 1, 1])
    assert not is_minuscule([2, 0])
    assert is_minuscule_weight_r(["1/2", "1/2"], 1)
    assert not is_minuscule_weight_r(["3/2", "1/2"], 2)
    assert omega(2, 3) == Coweight.of([1, 1, 0])


def test_gsp_defect():
    assert gsp_defect([1, 1, 0, 0]) == 1
    assert gsp_defect([2, 1, 0]) is None
    assert gsp_defect([1, 0, 0, 0]) is None


def test_polygon_vertices_join_equal_slopes():
    assert polygon_vertices(["3/2", "3/2", 1]) == [(0, 0), (1, 1), (3, 4)]
