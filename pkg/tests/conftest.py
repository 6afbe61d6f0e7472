"""
Pytest 공통 설정.

테스트 실행 위치가 프로젝트 루트가 아닐 때도
`app` 패키지를 import할 수 있도록 경로를 보정한다.
"""

import sys
import os
from pathlib import Path

import pytest


PROJECT_ROOT = Path(__file__).resolve().parents[1]

if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

# 로거가 상대경로("logs/")를 사용하므로, 어떤 위치에서 pytest를 실행해도
# 프로젝트 루트 기준으로 동일하게 동작하도록 작업 디렉터리를 고정한다.
os.chdir(PROJECT_ROOT)


@pytest.fixture
def tower_f2():
    """F_2 위, σ = 항등 (m = 1)"""
    from app.algebra.arith import field_tower

    return field_tower(2, 1, 1)


@pytest.fixture
def tower_f4():
    """F_4 = F_2 의 2차 확대, σ = x^2"""
    from app.algebra.arith import field_tower

    return field_tower(2, 1, 2)


@pytest.fixture
def tower_f3():
    from app.algebra.arith import field_tower

    return field_tower(3, 1, 1)
