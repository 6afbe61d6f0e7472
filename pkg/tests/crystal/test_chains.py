"""
X(ω_r, F)_Ī 사슬: 안정 직선, 사슬 완성, 공집합 판정 테스트
"""
import random

import pytest

import app.crystal.chains as chains_module
from app.algebra import matrix as mx
from app.algebra.coweight import Coweight, omega
from app.crystal.chains import (
    ChainExtension,
    EmptyChain,
    build_chain,
    chain_membership,
    extend_chain,
    is_stable_line,
    member_ok,
    residue_space,
    stable_line,
)
from app.crystal.isocrystal import Isocrystal, hodge_point, standard_isocrystal, standard_symplectic_isocrystal
from app.crystal.newton import NewtonPoint
from app.lattice.chain import LatticeChain
from app.lattice.lattice import Lattice, enumerate_lattices
from app.utils.errors import InvalidInputError, NewtonUncertifiedError


def test_kernel_line_for_supersingular_block(tower_f4):
    # ν = (1/2, 1/2): W = t^{-1}Λ_0/Λ_0 에서 F̄ 는 멱영, 안정 직선은 t^{-1}e_2
    T = tower_f4
    X = standard_isocrystal(T, ["1/2", "1/2"])
    L0 = Lattice.standard(T, 2)
    W = residue_space(L0.scale(-1), L0, X)
    assert not W.F.is_bijective()
    line = stable_line(W)
    assert line.case == "kernel"
    assert line.vector == (0, 1)
    assert is_stable_line(W, line.vector)


def test_build_chain_for_weight_one(tower_f4):
    X = standard_isocrystal(tower_f4, ["1/2", "1/2"])
    ext = build_chain(X, 1, [0, 1])
    assert isinstance(ext, ChainExtension)
    assert ext.chain.type == (0, 1)
    assert chain_membership(ext.chain, ext.isocrystal, 1)
    assert [s.index for s in ext.steps] == [1]
    assert ext.chain.member(1) == Lattice.diagonal(tower_f4, [0, -1])


def test_fixed_line_for_etale_swap(tower_f2):
    X = standard_isocrystal(tower_f2, [0, 0])
    ext = build_chain(X, 0, [0, 1])
    assert ext.steps[0].line == (1, 1)
    assert ext.steps[0].field_degree == 1
    assert member_ok(ext.chain.member(1), ext.isocrystal, 0)


def test_residue_field_extension_when_no_fixed_line(tower_f2):
    # F̄ = [[0, 1], [1, 1]] 의 고정 벡터는 F_8 에서 처음 생긴다
    T = tower_f2
    X = Isocrystal(T, mx.from_constants(T, [[0, 1], [1, 1]]))
    ext = build_chain(X, 0, [0, 1])
    assert ext.steps[0].field_degree == 3
    assert ext.chain.tower.m == 3
    assert chain_membership(ext.chain, ext.isocrystal, 0)


def test_non_minuscule_newton_point_gives_empty(tower_f2):
    X = standard_isocrystal(tower_f2, [2, 0])
    result = build_chain(X, 1, [0])
    assert isinstance(result, EmptyChain)
    assert result.reason.startswith("Mazur violation")


def test_extension_requires_a_member_chain(tower_f2):
    X = standard_isocrystal(tower_f2, ["1/2", "1/2"])
    chain = LatticeChain.single(0, Lattice.diagonal(tower_f2, [2, 0]))
    with pytest.raises(InvalidInputError):
        extend_chain(chain, X, 1, [0, 1])


def test_extension_keeps_given_members(tower_f4):
    T = tower_f4
    X = standard_isocrystal(T, ["1/2", "1/2"])
    start = LatticeChain.single(0, Lattice.standard(T, 2))
    ext = extend_chain(start, X, 1, [0, 1])
    assert ext.chain.member(0) == start.member(0)


def test_selfdual_chain_for_basic_gsp4(tower_f3):
    X, J = standard_symplectic_isocrystal(tower_f3, ["1/2"] * 4)
    ext = build_chain(X, 2, [0, 2], J)
    assert isinstance(ext, ChainExtension)
    assert ext.chain.type == (0, 2)
    assert chain_membership(ext.chain, ext.isocrystal, 2, ext.form)
    assert all(s.kind == "selfdual" for s in ext.steps)


def test_gsp_rejects_intermediate_weight(tower_f3):
    X, J = standard_symplectic_isocrystal(tower_f3, ["1/2"] * 4)
    result = build_chain(X, 1, [0], J)
    assert isinstance(result, EmptyChain)


def test_invalid_chain_is_rejected(tower_f2):
    X = standard_isocrystal(tower_f2, ["1/2", "1/2"])
    L0 = Lattice.standard(tower_f2, 2)
    bad = LatticeChain.from_members({0: L0, 1: Lattice.diagonal(tower_f2, [-1, -1])})
    with pytest.raises(InvalidInputError):
        chain_membership(bad, X, 1)


def test_uncertified_newton_point_leaves_emptiness_undecided(tower_f2, monkeypatch):
    X = standard_isocrystal(tower_f2, [2, 0])
    guess = NewtonPoint(Coweight.of([2, 0]), certified=False, method="fekete")
    monkeypatch.setattr(chains_module, "newton_point", lambda *_args, **_kw: guess)
    with pytest.raises(NewtonUncertifiedError) as e:
        build_chain(X, 1, [0])
    assert e.value.detail == {"stage": "newton", "nu": ["2", "0"]}


# ── 무게 r 미니스큘 ν 전체 ──────────────────────────────────────────

MINUSCULE_CASES = [
    ([0, 0], 0),
    ([1, 0], 1),
    (["1/2", "1/2"], 1),
    ([1, 1], 2),
    ([0, 0, 0], 0),
    ([1, 0, 0], 1),
    (["1/2", "1/2", 0], 1),
    (["1/3", "1/3", "1/3"], 1),
    ([1, 1, 0], 2),
    ([1, "1/2", "1/2"], 2),
    (["2/3", "2/3", "2/3"], 2),
    ([1, 1, 1], 3),
]


def _types(n: int) -> list[list[int]]:
    return [[i for i in range(n) if mask >> i & 1] for mask in range(1, 2 ** n)]


@pytest.mark.parametrize("nu, r", MINUSCULE_CASES)
def test_witness_chain_for_every_type(tower_f2, nu, r):
    X = standard_isocrystal(tower_f2, nu)
    for types in _types(X.n):
        ext = build_chain(X, r, types)
        assert isinstance(ext, ChainExtension), (nu, r, types)
        assert ext.chain.type == tuple(types)
        assert chain_membership(ext.chain, ext.isocrystal, r)


@pytest.mark.parametrize("nu, r", [([2, 0], 2), ([1, -1], 0), ([2, -1], 1), ([2, 0], 1)])
def test_non_minuscule_rank_two_is_empty_in_window(tower_f2, nu, r):
    X = standard_isocrystal(tower_f2, nu)
    for types in _types(2):
        assert isinstance(build_chain(X, r, types), EmptyChain)
    target = omega(r, 2)
    assert not any(hodge_point(M, X) == target for M in enumerate_lattices(tower_f2, 2, 1))


def test_random_sub_chains_extend_to_full_chains(tower_f2):
    rng = random.Random(20261016)
    full = {}
    for nu, r in MINUSCULE_CASES:
        X = standard_isocrystal(tower_f2, nu)
        full[(tuple(nu), r)] = build_chain(X, r, range(X.n))
    keys = sorted(full, key=str)
    for _ in range(200):
        key = rng.choice(keys)
        r = key[1]
        ext = full[key]
        X, n = ext.isocrystal, ext.isocrystal.n
        picked = rng.choice(_types(n))
        sub = ext.chain.restrict(picked)
        missing = [i for i in range(n) if i not in picked]
        if missing:
            lower, upper = sub.neighbours(missing[0])
            W = residue_space(sub.member(upper), sub.member(lower), X)
            line = stable_line(W)
            assert is_stable_line(W if line.tower is W.tower else W.embed(line.tower), line.vector)
        out = extend_chain(sub, X, r, range(n))
        assert chain_membership(out.chain, out.isocrystal, r)
        kept = out.chain.restrict(picked)
        assert kept == (sub if out.chain.tower is sub.tower else sub.embed(out.chain.tower)), (key, picked)
