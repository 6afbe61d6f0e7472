"""
스칼라 제한: 등급 주기 사슬 소속 판정과 사슬 완성 테스트
"""
import pytest

from app.algebra.arith import field_tower
from app.lattice.chain import standard_chain
from app.resscalars import (
    EmptyGraded,
    GradedChain,
    GradedChainExtension,
    build_graded_chain,
    graded_chain_membership,
    standard_graded_isocrystal,
)
from app.resscalars.chains import regrade_chain, ungrade_chain
from app.utils.errors import InvalidInputError


def _basic_norm(tower):
    X, _ = standard_graded_isocrystal(tower, [1, 1], f=2)
    return X


def test_pieces_must_share_a_type(tower_f4):
    with pytest.raises(InvalidInputError):
        GradedChain.of([standard_chain(tower_f4, 2, [0]), standard_chain(tower_f4, 2, [0, 1])])
    with pytest.raises(InvalidInputError):
        GradedChain.of([])


def test_build_iwahori_graded_chain(tower_f4):
    X = _basic_norm(tower_f4)
    ext = build_graded_chain(X, [1, 1], [0, 1])
    assert isinstance(ext, GradedChainExtension)
    assert ext.chain.f == 2
    assert ext.chain.type == (0, 1)
    assert graded_chain_membership(ext.chain, ext.isocrystal, [1, 1])
    # 인덱스 1 하나만 새로 넣는다
    assert [s.index for s in ext.steps] == [1]
    assert ext.steps[0].kind == "gl"


def test_restricting_the_built_chain_keeps_membership(tower_f4):
    X = _basic_norm(tower_f4)
    ext = build_graded_chain(X, [1, 1], [1])
    assert ext.chain.type == (1,)
    assert graded_chain_membership(ext.chain, ext.isocrystal, [1, 1])


def test_kappa_mismatch_gives_empty(tower_f4):
    X = _basic_norm(tower_f4)
    result = build_graded_chain(X, [1, 0], [0, 1])
    assert isinstance(result, EmptyGraded)
    assert result.reason.startswith("kappa mismatch")


def test_gsp_rejects_intermediate_ranks():
    X, form = standard_graded_isocrystal(field_tower(3, 1, 2), ["1/2"] * 4, f=2, group="gsp")
    result = build_graded_chain(X, [1, 1], [0], form)
    assert isinstance(result, EmptyGraded)
    assert result.reason.startswith("for GSp")


def test_ranks_are_checked(tower_f4):
    X = _basic_norm(tower_f4)
    with pytest.raises(InvalidInputError):
        build_graded_chain(X, [1], [0])
    with pytest.raises(InvalidInputError):
        build_graded_chain(X, [3, 1], [0])
    with pytest.raises(InvalidInputError):
        build_graded_chain(X, [1, 1], [])


def test_regrade_chain_requires_closure(tower_f4):
    X = _basic_norm(tower_f4)
    c = standard_chain(tower_f4, 2, [0, 1])
    with pytest.raises(InvalidInputError):
        regrade_chain([c, c], X)
    # F^2 는 Λ_0 을 고정하지 않는다
    with pytest.raises(InvalidInputError):
        regrade_chain([c, c, c], X)


def test_ungrade_requires_matching_f(tower_f4):
    X = _basic_norm(tower_f4)
    GC = GradedChain.of([standard_chain(tower_f4, 2, [0])])
    with pytest.raises(InvalidInputError):
        ungrade_chain(GC, X)


def test_built_chain_ungrades_and_regrades(tower_f4):
    X = _basic_norm(tower_f4)
    ext = build_graded_chain(X, [1, 1], [0, 1])
    chains = ungrade_chain(ext.chain, ext.isocrystal)
    assert len(chains) == 3
    assert regrade_chain(chains, ext.isocrystal) == ext.chain
