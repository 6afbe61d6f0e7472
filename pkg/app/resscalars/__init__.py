"""
resscalars 패키지: 비분기 f 차 확대에 대한 스칼라 제한

포함 모듈:
    graded : 등급 아이소크리스탈, 등급 격자, 사슬 변환, 등급 증인
    chains : 등급 주기 사슬의 소속 판정과 사슬 완성 (원형 도표 직선 해 사용)

사용 예시:
    from app.resscalars import standard_graded_isocrystal, GradedCoweight, witness_graded

    X, _ = standard_graded_isocrystal(field_tower(2, 1, 2), [1, 1], f=2)
    w = witness_graded(GradedCoweight.minuscule([1, 1], 2), X)

@since 2026-10-16
"""

from app.resscalars.graded import (
    EmptyGraded,
    GradedCoweight,
    GradedIsocrystal,
    GradedLattice,
    GradedWitness,
    interpolate_chain,
    regrade,
    standard_graded_isocrystal,
    ungrade,
    witness_graded,
)
from app.resscalars.chains import (
    GradedChain,
    GradedChainExtension,
    build_graded_chain,
    extend_graded_chain,
    graded_chain_extend,
    graded_chain_membership,
)

__all__ = [
    "EmptyGraded",
    "GradedCoweight",
    "GradedIsocrystal",
    "GradedLattice",
    "GradedWitness",
    "interpolate_chain",
    "regrade",
    "standard_graded_isocrystal",
    "ungrade",
    "witness_graded",
    "GradedChain",
    "GradedChainExtension",
    "build_graded_chain",
    "extend_graded_chain",
    "graded_chain_extend",
    "graded_chain_membership",
]
