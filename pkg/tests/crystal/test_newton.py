"""
Newton 점 경로 (단항, 블록 삼각, 순환 벡터) 테스트
"""
from app.algebra import matrix as mx
from app.algebra.arith import LaurentPoly
from app.algebra.coweight import Coweight
from app.crystal.isocrystal import Isocrystal, standard_isocrystal, twisted_example
from app.crystal.newton import is_basic, newton_point, support_components


def test_monomial_example(tower_f2):
    nu = newton_point(twisted_example(tower_f2, 1, "b"))
    assert nu.nu == Coweight.of(["3/2", "3/2", 1])
    assert nu.certified and nu.method == "monomial"


def test_sigma_conjugate_example_splits_into_blocks(tower_f2):
    # b′ 은 (3,2) 성분이 더해져 단항이 아니지만 {e_1, e_2}, {e_3} 로 블록 삼각
    X = twisted_example(tower_f2, 1, "b_prime")
    assert sorted(support_components(X)) == [[0, 1], [2]]
    nu = newton_point(X)
    assert nu.nu == Coweight.of(["3/2", "3/2", 1])
    assert nu.certified and nu.method == "triangular"


def test_larger_a_shifts_all_slopes(tower_f3):
    nu = newton_point(twisted_example(tower_f3, 2, "b_prime"))
    assert nu.nu == Coweight.of(["5/2", "5/2", 2])


def test_standard_forms_recover_their_newton_vector(tower_f4):
    for v in (["1/2", "1/2"], [1, 0], ["2/3", "2/3", "2/3"], [1, "1/2", "1/2"], ["3/2", "3/2", 0, 0]):
        nu = newton_point(standard_isocrystal(tower_f4, v))
        assert nu.nu == Coweight.of(v)
        assert nu.certified


def test_unipotent_conjugate_keeps_the_newton_point(tower_f4):
    # g = [[1, 1], [0, 1]] 로 σ-공액하면 지지 그래프가 강연결이 되어 순환 벡터 경로로 간다
    T = tower_f4
    X = standard_isocrystal(T, ["1/2", "1/2"])
    one, z = LaurentPoly.one(T), LaurentPoly.zero(T)
    Y = X.sigma_conjugate(mx.as_matrix([[one, one], [z, one]]))
    assert Y.b != X.b
    nu = newton_point(Y)
    assert nu.nu == Coweight.of(["1/2", "1/2"])
    assert nu.certified


def test_det_valuation_matches_total_slope(tower_f2):
    X = twisted_example(tower_f2, 1, "b")
    assert X.det_valuation == 4
    assert newton_point(X).nu.total == 4


def test_basic_detection(tower_f2):
    assert is_basic(standard_isocrystal(tower_f2, ["1/3", "1/3", "1/3"]))
    assert not is_basic(standard_isocrystal(tower_f2, [1, 0]))


def test_lower_triangular_diagonal_entries_give_slopes(tower_f2):
    T = tower_f2
    z = LaurentPoly.zero(T)
    b = mx.as_matrix([[LaurentPoly.t(T, 2), z], [LaurentPoly.one(T) + LaurentPoly.t(T), LaurentPoly.t(T, -1)]])
    nu = newton_point(Isocrystal(T, b))
    assert nu.nu == Coweight.of([2, -1])
    assert nu.method == "triangular"
