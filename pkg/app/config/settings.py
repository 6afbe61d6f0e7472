"""
탐색/출력 기본 설정

역할:
  - .env 또는 환경변수에서 탐색 예산 기본값을 읽는다
  - SearchConfig의 기본값과 CLI 플래그 기본값이 모두 여기서 온다

사용법:
  from app.config.settings import DEFAULT_WINDOW, DEFAULT_FIELD_CAP

@since 2026-10-16
"""
import os
from dotenv import load_dotenv

load_dotenv()

# 격자 탐색 창 a: 지수 범위 [-a, a]
DEFAULT_WINDOW = int(os.getenv("FCRYSTAL_WINDOW", "2"))

# 잉여체 확대 차수 상한 m_max (F_q 위의 차수)
DEFAULT_FIELD_CAP = int(os.getenv("FCRYSTAL_FIELD_CAP", "4"))

# 탐색 마감 시간 (초)
DEFAULT_DEADLINE = float(os.getenv("FCRYSTAL_DEADLINE", "120"))

# 난수 시드 (순환 벡터 표본 추출 등)
DEFAULT_SEED = int(os.getenv("FCRYSTAL_SEED", "0"))

# Newton 점 Fekete 경로의 Fekete 상한 s_max
DEFAULT_NEWTON_BUDGET = int(os.getenv("FCRYSTAL_NEWTON_BUDGET", "24"))

# 기본 체 F_q, q = p^e
DEFAULT_PRIME = int(os.getenv("FCRYSTAL_PRIME", "2"))
DEFAULT_BASE_DEGREE = int(os.getenv("FCRYSTAL_BASE_DEGREE", "1"))
