"""
RSNC 스케줄러 설정 파일
모든 설정값은 이 파일에서 중앙 관리됩니다.
"""

import os
from dataclasses import dataclass

from dotenv import load_dotenv

load_dotenv()


@dataclass
class SchedulerConfig:
    """스케줄러/그래프 공통 설정"""
    tolerance: float = 1e-9  # 실수 비교 허용 오차 (rate, deadline, weight)
    clique_enumeration_cap: int = 20  # enumerate_cliques 가 허용하는 최대 vertex 수


@dataclass
class OracleConfig:
    """Oracle (전수 탐색) 설정"""
    max_vertices: int = 8


@dataclass
class GeneratorConfig:
    """시나리오 생성 기본값"""
    packet_size: float = 100.0  # B (bits)
    has_density: float = 0.5
    wants_density: float = 0.3
    alpha: float = 1.0


@dataclass
class SweepConfig:
    """실험 sweep 설정"""
    samples: int = 100  # grid point 당 샘플 수
    seed: int = 2012
    workers: int = 1  # 1 이면 단일 프로세스
    timing: bool = False  # True 이면 mean_runtime_us 측정 (CSV 결정성이 깨짐)


@dataclass
class LoggingConfig:
    """로깅 설정"""
    level: str = "INFO"
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    file_path: str = ""  # 비어 있으면 콘솔만 사용
    max_file_size_mb: int = 10
    backup_count: int = 5


class Settings:
    """전체 설정 클래스"""

    def __init__(self):
        self.scheduler = SchedulerConfig()
        self.oracle = OracleConfig()
        self.generator = GeneratorConfig()
        self.sweep = SweepConfig()
        self.logging = LoggingConfig()

        # 환경변수에서 설정 오버라이드
        self._load_from_env()

    def _load_from_env(self):
        """환경변수에서 설정값 로드"""
        if os.getenv("RSNC_TOLERANCE"):
            self.scheduler.tolerance = float(os.getenv("RSNC_TOLERANCE"))

        if os.getenv("RSNC_CLIQUE_CAP"):
            self.scheduler.clique_enumeration_cap = int(os.getenv("RSNC_CLIQUE_CAP"))

        if os.getenv("RSNC_ORACLE_MAX_VERTICES"):
            self.oracle.max_vertices = int(os.getenv("RSNC_ORACLE_MAX_VERTICES"))

        # 생성기 기본값
        if os.getenv("RSNC_PACKET_SIZE"):
            self.generator.packet_size = float(os.getenv("RSNC_PACKET_SIZE"))

        if os.getenv("RSNC_HAS_DENSITY"):
            self.generator.has_density = float(os.getenv("RSNC_HAS_DENSITY"))

        if os.getenv("RSNC_WANTS_DENSITY"):
            self.generator.wants_density = float(os.getenv("RSNC_WANTS_DENSITY"))

        # Sweep 설정
        if os.getenv("RSNC_SWEEP_SAMPLES"):
            self.sweep.samples = int(os.getenv("RSNC_SWEEP_SAMPLES"))

        if os.getenv("RSNC_SWEEP_SEED"):
            self.sweep.seed = int(os.getenv("RSNC_SWEEP_SEED"))

        if os.getenv("RSNC_SWEEP_WORKERS"):
            self.sweep.workers = int(os.getenv("RSNC_SWEEP_WORKERS"))

        if os.getenv("RSNC_SWEEP_TIMING"):
            self.sweep.timing = os.getenv("RSNC_SWEEP_TIMING").lower() == "true"

        # 로깅
        if os.getenv("RSNC_LOG_LEVEL"):
            self.logging.level = os.getenv("RSNC_LOG_LEVEL")

        if os.getenv("RSNC_LOG_FILE"):
            self.logging.file_path = os.getenv("RSNC_LOG_FILE")

    def validate(self) -> bool:
        """설정값 유효성 검증"""
        errors = []

        if not 0 < self.scheduler.tolerance < 1e-3:
            errors.append("tolerance must be in (0, 1e-3)")

        if self.scheduler.clique_enumeration_cap < 1:
            errors.append("clique_enumeration_cap must be positive")

        if self.oracle.max_vertices < 1:
            errors.append("oracle max_vertices must be positive")

        if self.generator.packet_size <= 0:
            errors.append("packet_size must be positive")

        for name in ("has_density", "wants_density"):
            value = getattr(self.generator, name)
            if not 0 < value <= 1:
                errors.append(f"{name} must be in (0, 1]")

        if self.generator.alpha <= 0:
            errors.append("alpha must be positive")

        if self.sweep.samples < 1:
            errors.append("sweep samples must be positive")

        if self.sweep.workers < 1:
            errors.append("sweep workers must be positive")

        if self.logging.level.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            errors.append(f"Unknown log level: {self.logging.level}")

        if errors:
            raise ValueError(f"Configuration validation failed: {', '.join(errors)}")

        return True


# 전역 설정 인스턴스
settings = Settings()

# 설정 검증
settings.validate()
