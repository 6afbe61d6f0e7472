"""
스칼라 제한: 등급 아이소크리스탈, 등급 격자 변환, 보간, 등급 증인 테스트
"""
import random
from itertools import product

import pytest

import app.crystal.mazur as mazur_module
import app.resscalars.graded as graded_module
from app.algebra import matrix as mx
from app.algebra.arith import LaurentPoly, field_tower
from app.algebra.coweight import Coweight
from app.crystal.mazur import in_b_g_mu
from app.crystal.newton import NewtonPoint, newton_point
from app.lattice.lattice import Lattice, normalize
from app.resscalars import (
    EmptyGraded,
    GradedCoweight,
    GradedLattice,
    GradedWitness,
    interpolate_chain,
    regrade,
    standard_graded_isocrystal,
    ungrade,
    witness_graded,
)
from app.resscalars.graded import graded_isocrystal, graded_membership
from app.utils.errors import InvalidInputError, NewtonUncertifiedError


def test_working_field_must_carry_the_grading(tower_f2):
    with pytest.raises(InvalidInputError):
        standard_graded_isocrystal(tower_f2, [1, 1], f=2)


def test_norm_is_the_standard_form(tower_f4):
    X, form = standard_graded_isocrystal(tower_f4, ["1/2", "1/2"], f=2)
    assert form is None
    norm = X.norm()
    assert norm.tower.e == 2 and norm.tower.m == 1
    assert newton_point(norm).nu == Coweight.of(["1/2", "1/2"])


def test_ungrade_then_regrade(tower_f4):
    X, _ = standard_graded_isocrystal(tower_f4, [1, 1], f=2)
    GM = GradedLattice((Lattice.standard(tower_f4, 2), Lattice.diagonal(tower_f4, [0, -1])))
    chain = ungrade(GM, X)
    assert len(chain) == 3
    assert chain[2] == X.apply_power(chain[0], 2)
    assert regrade(chain, X) == GM


def test_regrade_rejects_open_chain(tower_f4):
    X, _ = standard_graded_isocrystal(tower_f4, [1, 1], f=2)
    L0 = Lattice.standard(tower_f4, 2)
    with pytest.raises(InvalidInputError):
        regrade([L0, L0, L0], X)


def test_interpolation_splits_relative_position(tower_f4):
    L0 = Lattice.standard(tower_f4, 2)
    end = Lattice.diagonal(tower_f4, [2, 0])
    chain = interpolate_chain(L0, end, [[1, 0], [1, 0]])
    assert chain[1] == Lattice.diagonal(tower_f4, [1, 0])
    with pytest.raises(InvalidInputError) as e:
        interpolate_chain(L0, end, [[1, 0], [0, 0]])
    assert set(e.value.detail) == {"relative_position", "sum"}


def test_graded_coweight_validation():
    mu = GradedCoweight.minuscule([1, 1], 2)
    assert mu.total == Coweight.of([2, 0])
    with pytest.raises(InvalidInputError):
        GradedCoweight.of([[1, 0], [1, 0, 0]])
    with pytest.raises(InvalidInputError):
        GradedCoweight.of([[0, 1]])


def test_graded_witness_for_basic_norm(tower_f4):
    X, _ = standard_graded_isocrystal(tower_f4, [1, 1], f=2)
    mu = GradedCoweight.minuscule([1, 1], 2)
    w = witness_graded(mu, X)
    assert isinstance(w, GradedWitness)
    assert w.method == "decomposable"
    assert w.chain[1] == Lattice.diagonal(tower_f4, [1, 0])
    assert w.lattice.member(1) == Lattice.diagonal(tower_f4, [0, -1])
    assert graded_membership(w.lattice, w.isocrystal, mu)


def test_graded_witness_kappa_mismatch(tower_f4):
    X, _ = standard_graded_isocrystal(tower_f4, [1, 1], f=2)
    result = witness_graded(GradedCoweight.minuscule([1, 0], 2), X)
    assert isinstance(result, EmptyGraded)
    assert result.reason.startswith("kappa mismatch")


def test_graded_witness_mazur_violation(tower_f4):
    X, _ = standard_graded_isocrystal(tower_f4, [2, 0], f=2)
    result = witness_graded(GradedCoweight.minuscule([2, 0], 2), X)
    assert isinstance(result, EmptyGraded)
    assert result.reason.startswith("Mazur violation")


def test_graded_symplectic_witness():
    T = field_tower(3, 1, 2)
    X, form = standard_graded_isocrystal(T, ["1/2"] * 4, f=2, group="gsp")
    mu = GradedCoweight.minuscule([2, 0], 4)
    w = witness_graded(mu, X, "gsp", form)
    assert isinstance(w, GradedWitness)
    assert w.method == "selfdual-explicit"
    assert sum("selfdual up to" in line for line in w.transcript) == 3


# ── 표준형이 아닌 노름 ──────────────────────────────────────────

def _monomial(tower, exps, swap: bool):
    """P·diag(t^{a_0}, t^{a_1}), P 는 항등 또는 전치"""
    z = LaurentPoly.zero(tower)
    a0, a1 = (LaurentPoly.t(tower, e) for e in exps)
    rows = [[z, a1], [a0, z]] if swap else [[a0, z], [z, a1]]
    return mx.as_matrix(rows)


def test_graded_witness_for_twisted_norm(tower_f4):
    # 노름 ν = (3/2, 3/2), μ′ = (2, 1): 깊이 2 후보에 특이 행렬이 섞여 있다
    X = graded_isocrystal(tower_f4, [_monomial(tower_f4, [0, 2], False), _monomial(tower_f4, [2, -1], True)])
    assert newton_point(X.norm()).nu == Coweight.of(["3/2", "3/2"])
    mu = GradedCoweight.minuscule([1, 2], 2)
    w = witness_graded(mu, X)
    assert isinstance(w, GradedWitness)
    assert graded_membership(w.lattice, w.isocrystal, mu)


def test_graded_witness_census_on_monomial_norms(tower_f4):
    rng = random.Random(20261016)
    for _ in range(50):
        bs = [
            _monomial(tower_f4, [rng.randint(0, 2), rng.randint(0, 2)], rng.random() < 0.5)
            for _ in range(2)
        ]
        X = graded_isocrystal(tower_f4, bs)
        norm = X.norm()
        for r0, r1 in product(range(3), repeat=2):
            mu = GradedCoweight.minuscule([r0, r1], 2)
            expected = in_b_g_mu(norm, mu.total)
            result = witness_graded(mu, X)
            if expected:
                assert isinstance(result, GradedWitness), (r0, r1, result)
                assert graded_membership(result.lattice, result.isocrystal, mu)
            else:
                assert isinstance(result, EmptyGraded), (r0, r1)


def test_uncertified_norm_newton_point_is_undecided(tower_f4, monkeypatch):
    X, _ = standard_graded_isocrystal(tower_f4, [1, 1], f=2)
    guess = NewtonPoint(Coweight.of([1, 1]), certified=False, method="fekete")
    monkeypatch.setattr(mazur_module, "newton_point", lambda *_args, **_kw: guess)
    monkeypatch.setattr(graded_module, "newton_point", lambda *_args, **_kw: guess)
    with pytest.raises(NewtonUncertifiedError) as e:
        witness_graded(GradedCoweight.minuscule([1, 1], 2), X)
    assert e.value.reason == "newton-uncertified"
    assert e.value.detail["nu"] == ["1", "1"]


def _random_lattice(rng: random.Random, tower, window: int) -> Lattice:
    """하삼각 기저: 대각 t^{a_i}, 대각 아래는 창 안 임의 다항식"""
    z = LaurentPoly.zero(tower)
    below = z
    for e in range(-window, window):
        below = below + LaurentPoly.monomial(tower, e, rng.randrange(tower.size))
    a, b = (LaurentPoly.t(tower, rng.randint(-window, window)) for _ in range(2))
    rows = [[a, z], [below, b]]
    return normalize(mx.as_matrix(rows))


def test_ungrade_regrade_round_trip_on_random_lattices(tower_f4):
    rng = random.Random(7)
    for _ in range(200):
        bs = [
            _monomial(tower_f4, [rng.randint(-1, 2), rng.randint(-1, 2)], rng.random() < 0.5)
            for _ in range(2)
        ]
        X = graded_isocrystal(tower_f4, bs)
        GM = GradedLattice(tuple(_random_lattice(rng, tower_f4, 2) for _ in range(2)))
        chain = ungrade(GM, X)
        assert chain[2] == X.apply_power(chain[0], 2)
        assert regrade(chain, X) == GM
