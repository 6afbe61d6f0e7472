"""
예외 계층 정의

역할:
  - 라이브러리 전체에서 사용하는 구조화된 예외
  - 각 예외는 CLI 종료 코드와 연결되는 reason 문자열을 가진다

CLI 매핑:
  InvalidInputError    -> exit 2 ("invalid-input")
  MazurViolationError  -> exit 1 ("mazur-violation")
  BudgetExhaustedError -> exit 3 ("budget", 하위 클래스 NewtonUncertifiedError 는 "newton-uncertified")

@since 2026-10-16
"""
from typing import Any, Optional


class FCrystalError(Exception):
    """모든 라이브러리 예외의 부모 클래스"""

    reason = "error"

    def __init__(self, message: str, detail: Optional[dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.detail = detail or {}

    def to_payload(self) -> dict[str, Any]:
        return {"error": self.reason, "message": self.message, "detail": self.detail}


class InvalidInputError(FCrystalError):
    """입력 형식/전제 조건 위반 (비지배 벡터, 특이 행렬, 도표 합성 조건 위반 등)"""

    reason = "invalid-input"


class MazurViolationError(FCrystalError):
    """요청한 μ가 ν̄ 위에 있지 않거나 κ가 맞지 않음"""

    reason = "mazur-violation"

    def __init__(self, nu, mu, message: str = "Mazur violation"):
        super().__init__(message, {"nu": [str(x) for x in nu], "mu": [str(x) for x in mu]})


class BudgetExhaustedError(FCrystalError):
    """탐색 창 / 체 차수 상한 / 마감 시간 소진"""

    reason = "budget"

    def __init__(self, stage: str, message: str = "witness not found within budget", **limits):
        super().__init__(message, {"stage": stage, **limits})


class PrecisionError(FCrystalError):
    """절단된 급수를 선언된 정밀도 이상으로 사용하려 함"""

    reason = "invalid-input"

    def __init__(self, required: int, available: int):
        super().__init__(
            f"precision insufficient: need {required}, have {available}",
            {"required": required, "available": available},
        )


class NewtonUncertifiedError(BudgetExhaustedError):
    """ν̄ 가 예산 안에서 인증되지 않아 공집합 여부를 판정할 수 없음"""

    reason = "newton-uncertified"

    def __init__(self, nu, message: str = "Newton point is not certified within the budget"):
        super().__init__("newton", message, nu=[str(x) for x in nu])
