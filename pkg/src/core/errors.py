"""
RSNC 예외 계층
라이브러리 함수는 예외를 던지고, CLI 가 이를 잡아서 exit code 로 변환합니다.
"""

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from src.core.models import ValidationReport


class RSNCError(Exception):
    """모든 RSNC 예외의 기반 클래스"""


class DomainError(RSNCError, ValueError):
    """정의역 밖의 입력 (예: wants 에 없는 패킷의 r_min)"""


class PreconditionError(RSNCError, ValueError):
    """연산의 사전 조건 위반 (clique 가 아닌 vertex 집합 등)"""


class InvalidConfigError(RSNCError, ValueError):
    """생성기/실험 설정 오류"""


class DocumentFormatError(RSNCError, ValueError):
    """JSON 문서의 형식, 스키마 또는 버전 오류"""


class InvalidScenarioError(RSNCError, ValueError):
    """불변식을 위반한 시나리오"""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__(f"Invalid scenario: {report.summary()}")


class CliqueEnumerationCapExceeded(RSNCError):
    """enumerate_cliques 의 vertex 상한 초과"""

    def __init__(self, vertex_count: int, cap: int):
        self.vertex_count = vertex_count
        self.cap = cap
        super().__init__(f"Clique enumeration refused: {vertex_count} vertices exceeds cap {cap}")


class OracleLimitExceeded(RSNCError):
    """Oracle 탐색 한도 초과"""

    def __init__(self, vertex_count: int, limit: int):
        self.vertex_count = vertex_count
        self.limit = limit
        super().__init__(f"Oracle refused: coding graph has {vertex_count} vertices, limit is {limit}")
