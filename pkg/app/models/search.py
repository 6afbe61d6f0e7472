"""
탐색 예산 설정

SearchConfig 필드:
  - window:        격자 탐색 창 a (지수 범위 [-a, a])
  - field_cap:     작업체 확대 차수 상한 m_max
  - deadline:      탐색 마감 시간 (초)
  - seed:          순환 벡터 표본 추출 시드
  - newton_budget: Newton 점 Fekete 경로의 s 상한

기본값은 모두 app.config.settings (FCRYSTAL_* 환경변수)에서 온다.

@since 2026-10-16
"""
import os
import time

from pydantic import BaseModel, ConfigDict, Field

from app.config.settings import (
    DEFAULT_DEADLINE,
    DEFAULT_FIELD_CAP,
    DEFAULT_NEWTON_BUDGET,
    DEFAULT_SEED,
    DEFAULT_WINDOW,
)


class SearchConfig(BaseModel):
    """
    격자/사슬/직선 탐색 공통 예산

    사용 예시:
        cfg = SearchConfig(window=2, field_cap=4)
        clock = cfg.start()
        clock.expired()      # False
    """
    model_config = ConfigDict(frozen=True)

    window: int = Field(default=DEFAULT_WINDOW, ge=0)
    field_cap: int = Field(default=DEFAULT_FIELD_CAP, ge=1)
    deadline: float = Field(default=DEFAULT_DEADLINE, gt=0)
    seed: int = DEFAULT_SEED
    newton_budget: int = Field(default=DEFAULT_NEWTON_BUDGET, ge=1)

    def start(self) -> "Deadline":
        return Deadline(self.deadline)

    @classmethod
    def from_env(cls, **overrides) -> "SearchConfig":
        """
        호출 시점의 FCRYSTAL_* 환경변수로 만든다 (None 이 아닌 overrides 가 우선)
        """
        values = {
            "window": int(os.getenv("FCRYSTAL_WINDOW", str(DEFAULT_WINDOW))),
            "field_cap": int(os.getenv("FCRYSTAL_FIELD_CAP", str(DEFAULT_FIELD_CAP))),
            "deadline": float(os.getenv("FCRYSTAL_DEADLINE", str(DEFAULT_DEADLINE))),
            "seed": int(os.getenv("FCRYSTAL_SEED", str(DEFAULT_SEED))),
            "newton_budget": int(os.getenv("FCRYSTAL_NEWTON_BUDGET", str(DEFAULT_NEWTON_BUDGET))),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class Deadline:
    """monotonic 시계 기준 마감"""

    def __init__(self, seconds: float):
        self.seconds = seconds
        self.started = time.monotonic()

    def elapsed(self) -> float:
        return time.monotonic() - self.started

    def expired(self) -> bool:
        return self.elapsed() > self.seconds
