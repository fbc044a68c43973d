"""
로깅 유틸리티
프로젝트 전반에서 사용할 로깅 설정과 유틸리티 함수들
"""

import logging
import logging.handlers
from pathlib import Path

from config.settings import settings


class Logger:
    """중앙화된 로거 관리 클래스"""

    _loggers = {}
    _initialized = False

    @classmethod
    def setup_logging(cls) -> None:
        """로깅 시스템 초기화"""
        if cls._initialized:
            return

        root_logger = logging.getLogger("rsnc")
        root_logger.setLevel(getattr(logging, settings.logging.level.upper()))
        root_logger.propagate = False

        # 기존 핸들러 제거
        for handler in root_logger.handlers[:]:
            root_logger.removeHandler(handler)

        formatter = logging.Formatter(settings.logging.format)

        # 콘솔 핸들러 (stdout 은 CLI 출력용이므로 stderr 사용)
        console_handler = logging.StreamHandler()
        console_handler.setLevel(getattr(logging, settings.logging.level.upper()))
        console_handler.setFormatter(formatter)
        root_logger.addHandler(console_handler)

        # 파일 핸들러 (로테이션) - 경로가 설정된 경우에만
        if settings.logging.file_path:
            log_dir = Path(settings.logging.file_path).parent
            log_dir.mkdir(parents=True, exist_ok=True)

            file_handler = logging.handlers.RotatingFileHandler(
                settings.logging.file_path,
                maxBytes=settings.logging.max_file_size_mb * 1024 * 1024,
                backupCount=settings.logging.backup_count,
                encoding='utf-8'
            )
            file_handler.setLevel(getattr(logging, settings.logging.level.upper()))
            file_handler.setFormatter(formatter)
            root_logger.addHandler(file_handler)

        cls._initialized = True

        logger = cls.get_logger("logger")
        logger.debug("Logging system initialized")

    @classmethod
    def get_logger(cls, name: str) -> logging.Logger:
        """이름별 로거 반환 (모두 'rsnc' 하위 로거)"""
        if not cls._initialized:
            cls.setup_logging()

        if name not in cls._loggers:
            cls._loggers[name] = logging.getLogger(f"rsnc.{name}")

        return cls._loggers[name]


def get_logger(name: str) -> logging.Logger:
    """편의 함수: 로거 반환"""
    return Logger.get_logger(name)


class StructuredLogger:
    """구조화된 로깅을 위한 클래스"""

    def __init__(self, name: str):
        self.logger = get_logger(name)

    def log_propagation(self, algorithm: str, round_index: int, details: dict):
        """한 번의 전송(propagation) 결정 로깅 - 라운드마다 호출되므로 DEBUG"""
        self.logger.debug(f"[{algorithm}] round {round_index} | {details}")

    def log_run(self, algorithm: str, requests: int, misses: int, transmissions: int, duration: float):
        """전체 전송 과정 결과 로깅 - sweep 에서는 샘플마다 호출되므로 DEBUG"""
        self.logger.debug(
            f"Run[{algorithm}]: {transmissions} transmissions | "
            f"misses {misses}/{requests} | Time: {duration * 1000:.2f}ms"
        )

    def log_oracle(self, explored: int, min_misses: int, duration: float):
        """Oracle 탐색 로깅"""
        self.logger.info(f"Oracle: explored {explored} schedules | min misses {min_misses} | Time: {duration:.2f}s")

    def log_sweep_point(self, experiment: str, grid_point: str, algorithm: str, samples: int, mean: float):
        """Sweep grid point 집계 로깅"""
        self.logger.info(f"Sweep[{experiment}] {grid_point} | {algorithm}: mean {mean:.4f} over {samples} samples")

    def log_event(self, event: str, details: dict = None):
        """일반 이벤트 로깅"""
        message = event
        if details:
            message += f" - {details}"
        self.logger.info(message)

    def log_error(self, error: Exception, context: str = ""):
        """에러 로깅"""
        message = f"Error in {context}: {str(error)}" if context else f"Error: {str(error)}"
        self.logger.error(message, exc_info=True)

    def log_performance(self, operation: str, duration: float, details: dict = None):
        """성능 로깅"""
        message = f"Performance: {operation} took {duration:.2f}s"
        if details:
            message += f" | {details}"
        self.logger.info(message)


# 전역 구조화된 로거 인스턴스들
scheduler_logger = StructuredLogger("scheduler")
baseline_logger = StructuredLogger("baselines")
oracle_logger = StructuredLogger("oracle")
harness_logger = StructuredLogger("harness")
cli_logger = StructuredLogger("cli")

# 로깅 시스템 초기화
Logger.setup_logging()
