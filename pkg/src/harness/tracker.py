"""
Sweep Tracker
실험 sweep 의 샘플 실행(grid point × 알고리즘 × 샘플)을 추적하고 진행 상황을 요약합니다.
"""

from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from typing import Any, Callable, Dict, List, Optional

from src.utils.logger import harness_logger


class SampleRunStatus(Enum):
    """샘플 실행 상태"""
    PENDING = "pending"
    RUNNING = "running"
    COMPLETED = "completed"
    SKIPPED = "skipped"
    FAILED = "failed"


@dataclass
class SampleRunInfo:
    """샘플 실행 정보"""
    run_id: str
    experiment: str
    grid_point: str
    algorithm: str
    sample_index: int
    status: SampleRunStatus
    start_time: Optional[datetime] = None
    end_time: Optional[datetime] = None
    value: Optional[float] = None
    runtime_us: Optional[float] = None
    error_message: Optional[str] = None

    def get_duration(self) -> float:
        if self.start_time and self.end_time:
            return (self.end_time - self.start_time).total_seconds()
        return 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "run_id": self.run_id,
            "experiment": self.experiment,
            "grid_point": self.grid_point,
            "algorithm": self.algorithm,
            "sample_index": self.sample_index,
            "status": self.status.value,
            "value": self.value,
            "runtime_us": self.runtime_us,
            "error_message": self.error_message,
            "duration": self.get_duration()
        }


class SweepTracker:
    """sweep 샘플 실행 추적"""

    def __init__(self):
        self.active_runs: Dict[str, SampleRunInfo] = {}
        self.finished_runs: List[SampleRunInfo] = []
        self.progress_callback: Optional[Callable[[str, Dict[str, Any]], None]] = None
        self.run_counter = 0
        self.expected_runs: Optional[int] = None

    def set_progress_callback(self, callback: Callable[[str, Dict[str, Any]], None]):
        """진행 상황 콜백 설정 (event, run 정보)"""
        self.progress_callback = callback

    def expect(self, total: int):
        """이번 sweep 에서 실행될 run 수 (진행률 표시용)"""
        self.expected_runs = len(self.finished_runs) + len(self.active_runs) + total

    def start_run(self, experiment: str, grid_point: str, algorithm: str, sample_index: int) -> str:
        self.run_counter += 1
        run_id = f"run_{self.run_counter}"
        self.active_runs[run_id] = SampleRunInfo(
            run_id=run_id,
            experiment=experiment,
            grid_point=grid_point,
            algorithm=algorithm,
            sample_index=sample_index,
            status=SampleRunStatus.RUNNING,
            start_time=datetime.now()
        )

        if self.progress_callback:
            self.progress_callback("run_start", self.active_runs[run_id].to_dict())

        return run_id

    def _finish(self, run_id: str, status: SampleRunStatus, event: str, **updates: Any) -> None:
        if run_id not in self.active_runs:
            return

        info = self.active_runs.pop(run_id)
        info.status = status
        info.end_time = datetime.now()
        for key, value in updates.items():
            setattr(info, key, value)
        self.finished_runs.append(info)

        if self.progress_callback:
            self.progress_callback(event, info.to_dict())

    def complete_run(self, run_id: str, value: float, runtime_us: Optional[float] = None):
        self._finish(run_id, SampleRunStatus.COMPLETED, "run_complete", value=value, runtime_us=runtime_us)

    def skip_run(self, run_id: str, reason: str):
        """oracle 한도 초과 등으로 건너뛴 샘플"""
        self._finish(run_id, SampleRunStatus.SKIPPED, "run_skipped", error_message=reason)

    def fail_run(self, run_id: str, error_message: str):
        self._finish(run_id, SampleRunStatus.FAILED, "run_failed", error_message=error_message)
        harness_logger.log_event("sample_run_failed", {"run_id": run_id, "error": error_message})

    def skipped_count(self, grid_point: Optional[str] = None, algorithm: Optional[str] = None) -> int:
        return sum(
            1 for run in self.finished_runs
            if run.status == SampleRunStatus.SKIPPED
            and (grid_point is None or run.grid_point == grid_point)
            and (algorithm is None or run.algorithm == algorithm)
        )

    def get_statistics(self) -> Dict[str, Any]:
        """실행 통계 반환"""
        total_runs = len(self.finished_runs)
        if total_runs == 0:
            return {"total_runs": 0}

        by_status = {status.value: 0 for status in SampleRunStatus}
        algorithm_stats: Dict[str, Dict[str, int]] = {}
        for run in self.finished_runs:
            by_status[run.status.value] += 1
            stats = algorithm_stats.setdefault(run.algorithm, {"count": 0, "completed": 0, "skipped": 0})
            stats["count"] += 1
            if run.status == SampleRunStatus.COMPLETED:
                stats["completed"] += 1
            elif run.status == SampleRunStatus.SKIPPED:
                stats["skipped"] += 1

        return {
            "total_runs": total_runs,
            "completed_runs": by_status["completed"],
            "skipped_runs": by_status["skipped"],
            "failed_runs": by_status["failed"],
            "completion_rate": round(by_status["completed"] / total_runs * 100, 1),
            "active_runs": len(self.active_runs),
            "algorithm_statistics": algorithm_stats
        }

    def generate_progress_summary(self) -> Dict[str, Any]:
        """진행 상황 요약 (CLI 용)"""
        recent = self.finished_runs[-5:]
        return {
            "active_count": len(self.active_runs),
            "finished_count": len(self.finished_runs),
            "expected_count": self.expected_runs,
            "recent": [run.to_dict() for run in recent],
            "overall_status": "running" if self.active_runs else "idle"
        }
