"""
crystal 패키지: 아이소크리스탈과 그 위의 격자 문제

포함 모듈:
    isocrystal : F = bσ, 표준형, 심플렉틱 표준형, Hodge 점
    newton     : 인증된 Newton 점 (단항식 / 삼각 / 순환 벡터 / Fekete 경로)
    mazur      : Mazur 부등식, B(G, μ) 판정, 증인 격자 구성, Hodge 집합 열거
    chains     : X(ω_r, F)_Ī 사슬 소속 판정과 사슬 완성

사용 예시:
    from app.crystal import standard_isocrystal, newton_point, construct_lattice

    X = standard_isocrystal(field_tower(2, 1, 1), ["1/2", "1/2"])
    newton_point(X).nu                     # (1/2, 1/2)

@since 2026-10-16
"""

from app.crystal.chains import EmptyChain, build_chain, chain_membership, extend_chain
from app.crystal.isocrystal import Isocrystal, hodge_point, standard_isocrystal, standard_symplectic_isocrystal
from app.crystal.mazur import construct_lattice, construct_lattice_gsp, in_b_g_mu, mazur_check
from app.crystal.newton import NewtonPoint, is_basic, newton_point

__all__ = [
    "EmptyChain",
    "build_chain",
    "chain_membership",
    "extend_chain",
    "Isocrystal",
    "hodge_point",
    "standard_isocrystal",
    "standard_symplectic_isocrystal",
    "construct_lattice",
    "construct_lattice_gsp",
    "in_b_g_mu",
    "mazur_check",
    "NewtonPoint",
    "is_basic",
    "newton_point",
]
