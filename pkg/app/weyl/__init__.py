"""
weyl 패키지: GL_n, GSp_2n 의 확장 아핀 바일 군과 허용 집합

포함 모듈:
    affine     : 창 표기 원소, 길이, 축약어, 브뤼아 순서
    admissible : Adm(μ), 파라호릭 사영, μ-허용 집합, 사슬 쌍 이중잉여류

@since 2026-10-16
"""

from app.weyl.admissible import AdmissibleSet, adm_set, chain_inv_admissible, perm_set, realised_double_cosets
from app.weyl.affine import AffineWeylElement, bruhat_leq, tau, translation

__all__ = [
    "AdmissibleSet",
    "adm_set",
    "chain_inv_admissible",
    "perm_set",
    "realised_double_cosets",
    "AffineWeylElement",
    "bruhat_leq",
    "tau",
    "translation",
]
