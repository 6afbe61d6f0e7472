"""
유한체 탑과 Laurent 다항식 테스트
"""
import pytest

from app.algebra.arith import LaurentPoly, field_tower, finite_field, int_to_field, series_invert
from app.utils.errors import InvalidInputError, PrecisionError


def test_f4_generator_satisfies_conway_relation():
    # F_4 = F_2[α]/(α^2 + α + 1): α = 2, α^2 = α + 1 = 3
    F4 = finite_field(2, 2)
    assert F4.generator == 2
    assert F4.mul(2, 2) == 3
    assert F4.add(F4.mul(2, 2), 2) == 1


def test_field_axioms_on_f9():
    F9 = finite_field(3, 2)
    for a in range(1, 9):
        assert F9.mul(a, F9.inv(a)) == 1
        assert F9.add(a, F9.neg(a)) == 0
        assert F9.power(a, 8) == 1


def test_frobenius_has_order_degree():
    F16 = finite_field(2, 4)
    for a in F16.elements():
        assert F16.frobenius(a, 4) == a
    assert any(F16.frobenius(a, 2) != a for a in F16.elements())


def test_embedding_is_a_ring_map():
    F4, F16 = finite_field(2, 2), finite_field(2, 4)
    for a in range(4):
        for b in range(4):
            assert F4.embed_into(F16, F4.mul(a, b)) == F16.mul(F4.embed_into(F16, a), F4.embed_into(F16, b))
            assert F4.embed_into(F16, F4.add(a, b)) == F16.add(F4.embed_into(F16, a), F4.embed_into(F16, b))


def test_digits_give_prime_field_coordinates():
    F9 = finite_field(3, 2)
    for a in range(9):
        assert F9.from_digits(F9.digits(a)) == a
    with pytest.raises(InvalidInputError):
        F9.from_digits([3, 0])


def test_composite_characteristic_is_rejected():
    with pytest.raises(InvalidInputError):
        finite_field(4, 1)


def test_int_to_field_reduces_mod_p():
    F3 = finite_field(3, 1)
    assert int_to_field(F3, -1) == 2
    assert int_to_field(F3, 6) == 0


def test_tower_sigma_is_q_power():
    # q = 4 위의 F_16: σ(x) = x^4, σ^2 = id
    T = field_tower(2, 2, 2)
    for a in range(1, 16):
        assert T.frobenius(a, 1) == T.field.power(a, 4)
        assert T.frobenius(a, 2) == a


def test_rebase_reads_same_field_with_new_sigma():
    T = field_tower(2, 1, 4)
    R = T.rebase(2)
    assert R is field_tower(2, 2, 2)
    assert R.same_field(T)
    for a in T.field.elements():
        assert R.frobenius(a, 1) == T.frobenius(a, 2)
    with pytest.raises(InvalidInputError):
        T.rebase(3)


def test_towers_are_cached():
    assert field_tower(3, 1, 2) is field_tower(3, 1, 2)


def test_laurent_arithmetic(tower_f4):
    T = tower_f4
    f = LaurentPoly.monomial(T, 1, 2) + LaurentPoly.t(T, 2)      # α·t + t^2
    g = LaurentPoly.t(T, -1)
    assert (f * g) == LaurentPoly.monomial(T, 0, 2) + LaurentPoly.t(T, 1)
    assert f.valuation() == 1
    assert (f - f).is_zero()
    assert f.shift(-1).valuation() == 0


def test_frobenius_acts_on_coefficients_only(tower_f4):
    T = tower_f4
    f = LaurentPoly.monomial(T, 1, 2) + LaurentPoly.t(T, 2)
    assert f.frobenius(1) == LaurentPoly.monomial(T, 1, 3) + LaurentPoly.t(T, 2)
    assert f.frobenius(2) == f


def test_series_invert_of_one_plus_t(tower_f2):
    T = tower_f2
    f = LaurentPoly.one(T) + LaurentPoly.t(T)
    g = series_invert(f, 5)
    assert g.terms == tuple((k, 1) for k in range(5))
    assert g.precision == 5
    assert (f * g - 1).is_zero()


def test_series_invert_of_monomial_is_exact(tower_f3):
    T = tower_f3
    g = series_invert(LaurentPoly.monomial(T, 2, 2), 10)
    assert g == LaurentPoly.monomial(T, -2, 2)
    assert g.precision is None


def test_series_invert_refuses_to_exceed_precision(tower_f2):
    T = tower_f2
    rough = series_invert(LaurentPoly.one(T) + LaurentPoly.t(T), 3)
    with pytest.raises(PrecisionError):
        series_invert(rough, 5)


def test_mixed_fields_do_not_combine(tower_f2, tower_f4):
    with pytest.raises(InvalidInputError):
        LaurentPoly.one(tower_f2) + LaurentPoly.one(tower_f4)
