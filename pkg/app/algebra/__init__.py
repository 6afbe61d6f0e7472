"""
algebra 패키지: 유한체 탑, Laurent 다항식, 잉여체 반선형 대수, 코웨이트 조합론

포함 모듈:
    arith      : FieldTower (F_{q^m}, σ), LaurentPoly, 급수 역원
    matrix     : LaurentPoly 성분 행렬 (행렬식, 소행렬식 값매김, 역행렬)
    semilinear : 잉여체 위 x ↦ A·σ^k(x) 사상, 영공간, 고정 벡터
    coweight   : 지배 코웨이트, 지배 순서, 미니스큘 판정, Levi 분할과 κ

사용 예시:
    from app.algebra import field_tower, Coweight, dominance_leq

    T = field_tower(2, 1, 2)
    dominance_leq(Coweight.of(["1/2", "1/2"]), Coweight.of([1, 0]))   # True

@since 2026-10-16
"""

from app.algebra.arith import FieldTower, LaurentPoly, common_tower, field_tower
from app.algebra.coweight import Coweight, dominance_leq, dominant_sort, is_minuscule, omega
from app.algebra.semilinear import SemilinearMap

__all__ = [
    "FieldTower",
    "LaurentPoly",
    "common_tower",
    "field_tower",
    "Coweight",
    "dominance_leq",
    "dominant_sort",
    "is_minuscule",
    "omega",
    "SemilinearMap",
]
