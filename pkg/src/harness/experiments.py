"""
실험 sweep
preset/사용자 정의 실험을 grid point 별로 실행하고 결과를 ResultsTable(CSV)로 집계합니다.
샘플별 시드는 (master seed, grid index, sample index) 로 결정되므로
병렬 실행 여부와 관계없이 같은 CSV 가 나옵니다.
"""

import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from config.settings import settings
from src.core.errors import InvalidConfigError, OracleLimitExceeded
from src.core.models import Scenario, TransmissionLog
from src.core.serialization import read_json, validate_document
from src.harness.generator import GenConfig, generate_scenario
from src.harness.metrics import deadline_miss_ratio, single_tx_tradeoff
from src.harness.tracker import SweepTracker
from src.scheduling.baselines import run_dsf, run_sin1
from src.scheduling.oracle import OracleLimits, optimal_schedule
from src.scheduling.rsnc import run_rsnc
from src.utils.logger import harness_logger

EXPERIMENT_KINDS = ("single-tx-tradeoff", "rate-sweep", "m-sweep", "n-sweep", "custom")
MEASURES = ("miss_ratio", "tradeoff")
SCHEDULERS: Dict[str, Callable[[Scenario], TransmissionLog]] = {
    "rsnc": run_rsnc,
    "dsf": run_dsf,
    "sin1": run_sin1,
}
ALGORITHMS = tuple(SCHEDULERS) + ("oracle",)
TRADEOFF_LABELS = ("rsnc:satisfied", "rsnc:failed")
RESULT_COLUMNS = [
    "experiment", "grid_point", "algorithm", "samples",
    "mean_miss_ratio", "std_miss_ratio", "mean_transmissions", "mean_runtime_us",
]

EXPERIMENT_SCHEMA: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["name", "base", "grid"],
    "properties": {
        "name": {"type": "string", "minLength": 1},
        "kind": {"enum": list(EXPERIMENT_KINDS)},
        "measure": {"enum": list(MEASURES)},
        "base": {"type": "object"},
        "grid": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["label"],
                "properties": {
                    "label": {"type": "string", "minLength": 1},
                    "overrides": {"type": "object"},
                    "rate": {"type": "number", "exclusiveMinimum": 0}
                },
                "additionalProperties": False
            }
        },
        "algorithms": {"type": "array", "items": {"enum": list(ALGORITHMS)}, "minItems": 1},
        "samples": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer", "minimum": 0}
    },
    "additionalProperties": False
}


@dataclass(frozen=True)
class GridPoint:
    """실험 grid 의 한 점: 생성 설정 override 와 (tradeoff 실험의) 후보 전송률"""
    label: str
    overrides: Dict[str, Any] = field(default_factory=dict)
    rate: Optional[float] = None


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    kind: str
    base: GenConfig
    grid: Tuple[GridPoint, ...]
    algorithms: Tuple[str, ...] = ("rsnc", "dsf", "sin1")
    samples: int = field(default_factory=lambda: settings.sweep.samples)
    seed: int = field(default_factory=lambda: settings.sweep.seed)
    measure: str = "miss_ratio"

    def validate(self) -> None:
        errors = []
        if self.kind not in EXPERIMENT_KINDS:
            errors.append(f"unknown experiment kind '{self.kind}'")
        if self.measure not in MEASURES:
            errors.append(f"unknown measure '{self.measure}'")
        if self.samples < 1:
            errors.append(f"samples must be at least 1, got {self.samples}")
        if not self.grid:
            errors.append("grid must have at least one point")
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            errors.append(f"unknown algorithms {unknown}")
        if self.measure == "tradeoff" and any(p.rate is None or not p.rate > 0 for p in self.grid):
            errors.append("tradeoff grid points need a positive candidate rate")
        if errors:
            raise InvalidConfigError(f"Experiment '{self.name}' validation failed: {'; '.join(errors)}")
        for point in self.grid:
            self.point_config(point).validate()

    def point_config(self, point: GridPoint) -> GenConfig:
        return self.base.with_overrides(**point.overrides)


def _rates_label(rmin: float, rmax: float) -> str:
    return f"rates=[{rmin:g},{rmax:g}]"


# rate-sweep preset 의 패킷 크기 (bits)
RATE_SWEEP_PACKET_SIZE = 500.0


def preset_experiment(name: str, samples: Optional[int] = None, seed: Optional[int] = None) -> ExperimentConfig:
    """이름으로 preset 실험 생성"""
    samples = settings.sweep.samples if samples is None else samples
    seed = settings.sweep.seed if seed is None else seed

    if name == "single-tx-tradeoff":
        base = GenConfig(n=10, m=20, rmin=10, rmax=100, tmin=10, tmax=50)
        grid = tuple(GridPoint(label=f"rate={rate}", rate=float(rate)) for rate in range(10, 101, 10))
        return ExperimentConfig(name=name, kind=name, base=base, grid=grid, algorithms=("rsnc",),
                                samples=samples, seed=seed, measure="tradeoff")

    rate_ranges = ((10, 50), (50, 100))
    if name == "rate-sweep":
        base = GenConfig(n=10, m=10, rmin=10, rmax=50, tmin=10, tmax=50, packet_size=RATE_SWEEP_PACKET_SIZE)
        grid = tuple(
            GridPoint(label=_rates_label(lo, hi), overrides={"rmin": lo, "rmax": hi})
            for lo, hi in rate_ranges
        )
    elif name == "m-sweep":
        base = GenConfig(n=10, m=10, rmin=10, rmax=50, tmin=10, tmax=50)
        grid = tuple(
            GridPoint(label=f"{_rates_label(lo, hi)},m={m}", overrides={"rmin": lo, "rmax": hi, "m": m})
            for lo, hi in rate_ranges
            for m in range(5, 16)
        )
    elif name == "n-sweep":
        base = GenConfig(n=10, m=10, rmin=10, rmax=50, tmin=10, tmax=50)
        grid = tuple(
            GridPoint(label=f"tmax={tmax},n={n}", overrides={"tmax": tmax, "n": n})
            for tmax in (50, 80)
            for n in range(10, 41, 5)
        )
    else:
        raise InvalidConfigError(f"Unknown preset experiment '{name}'")

    return ExperimentConfig(name=name, kind=name, base=base, grid=grid, samples=samples, seed=seed)


def experiment_from_dict(data: Dict[str, Any]) -> ExperimentConfig:
    validate_document(data, EXPERIMENT_SCHEMA, "experiment")
    grid = tuple(
        GridPoint(label=item["label"], overrides=dict(item.get("overrides", {})), rate=item.get("rate"))
        for item in data["grid"]
    )
    experiment = ExperimentConfig(
        name=data["name"],
        kind=data.get("kind", "custom"),
        base=GenConfig.from_dict(data["base"]),
        grid=grid,
        algorithms=tuple(data.get("algorithms", ("rsnc", "dsf", "sin1"))),
        samples=data.get("samples", settings.sweep.samples),
        seed=data.get("seed", settings.sweep.seed),
        measure=data.get("measure", "miss_ratio")
    )
    experiment.validate()
    return experiment


def load_experiment(path: Union[str, Path]) -> ExperimentConfig:
    """사용자 정의 실험 JSON 파일 로드"""
    return experiment_from_dict(read_json(path))


def resolve_experiment(name_or_path: str, samples: Optional[int] = None, seed: Optional[int] = None) -> ExperimentConfig:
    """preset 이름이면 preset, 아니면 JSON 파일 경로로 해석 (samples/seed 는 덮어씀)"""
    if name_or_path in EXPERIMENT_KINDS and name_or_path != "custom":
        return preset_experiment(name_or_path, samples=samples, seed=seed)
    experiment = load_experiment(name_or_path)
    overrides = {}
    if samples is not None:
        overrides["samples"] = samples
    if seed is not None:
        overrides["seed"] = seed
    if overrides:
        experiment = replace(experiment, **overrides)
        experiment.validate()
    return experiment


def sample_seed(master_seed: int, grid_index: int, sample_index: int) -> int:
    """(master seed, grid index, sample index) 에서 결정되는 64-bit 샘플 시드"""
    sequence = np.random.SeedSequence(master_seed, spawn_key=(grid_index, sample_index))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class SampleTask:
    """한 샘플의 작업 단위 (프로세스 간 전달 가능)"""
    grid_index: int
    sample_index: int
    config: GenConfig
    algorithms: Tuple[str, ...]
    measure: str
    rate: Optional[float]
    timing: bool
    oracle_max_vertices: int


@dataclass(frozen=True)
class SampleMeasurement:
    algorithm: str
    value: Optional[float]
    transmissions: Optional[int] = None
    runtime_us: Optional[float] = None
    skipped: bool = False


def evaluate_sample(task: SampleTask) -> List[SampleMeasurement]:
    """샘플 하나를 생성하고 task 의 알고리즘을 실행"""
    scenario = generate_scenario(task.config)

    if task.measure == "tradeoff":
        point = single_tx_tradeoff(scenario, task.rate)
        return [
            SampleMeasurement(TRADEOFF_LABELS[0], point.satisfied, transmissions=1),
            SampleMeasurement(TRADEOFF_LABELS[1], point.failed, transmissions=1),
        ]

    measurements = []
    for algorithm in task.algorithms:
        started = time.perf_counter_ns()
        try:
            if algorithm == "oracle":
                log = optimal_schedule(scenario, OracleLimits(max_vertices=task.oracle_max_vertices)).best_log
            else:
                log = SCHEDULERS[algorithm](scenario)
        except OracleLimitExceeded:
            measurements.append(SampleMeasurement(algorithm, None, skipped=True))
            continue
        elapsed_us = (time.perf_counter_ns() - started) / 1000.0
        measurements.append(SampleMeasurement(
            algorithm=algorithm,
            value=deadline_miss_ratio(log, scenario),
            transmissions=len(log.transmissions),
            runtime_us=elapsed_us if task.timing else None
        ))
    return measurements


@dataclass(frozen=True)
class ResultRow:
    experiment: str
    grid_point: str
    algorithm: str
    samples: int
    mean_miss_ratio: float
    std_miss_ratio: float
    mean_transmissions: float
    mean_runtime_us: Optional[float] = None


@dataclass
class ResultsTable:
    """grid point × 알고리즘 별 집계 결과

    tradeoff 실험에서는 mean/std 열이 비율이 아닌 요청 수를 담는다.
    """
    experiment: str
    rows: List[ResultRow] = field(default_factory=list)
    skipped: Dict[Tuple[str, str], int] = field(default_factory=dict)

    def to_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame([row.__dict__ for row in self.rows], columns=RESULT_COLUMNS)

    def to_csv(self, path: Union[str, Path]) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.to_dataframe().to_csv(path, index=False, na_rep="", lineterminator="\n")

    def row(self, grid_point: str, algorithm: str) -> ResultRow:
        for row in self.rows:
            if row.grid_point == grid_point and row.algorithm == algorithm:
                return row
        raise KeyError(f"No result for {grid_point} / {algorithm}")

    def means(self, algorithm: str) -> List[float]:
        """grid 순서대로 알고리즘의 평균값"""
        return [row.mean_miss_ratio for row in self.rows if row.algorithm == algorithm]

    @property
    def total_skipped(self) -> int:
        return sum(self.skipped.values())


def _aggregate(experiment: ExperimentConfig, point: GridPoint, algorithm: str,
               measurements: List[SampleMeasurement], timing: bool) -> Optional[ResultRow]:
    kept = [m for m in measurements if not m.skipped]
    if not kept:
        return None
    values = np.array([m.value for m in kept], dtype=float)
    std = float(np.std(values, ddof=1)) if len(values) > 1 else 0.0
    runtime = float(np.mean([m.runtime_us for m in kept])) if timing else None
    return ResultRow(
        experiment=experiment.name,
        grid_point=point.label,
        algorithm=algorithm,
        samples=len(kept),
        mean_miss_ratio=float(np.mean(values)),
        std_miss_ratio=std,
        mean_transmissions=float(np.mean([m.transmissions for m in kept])),
        mean_runtime_us=runtime
    )


def _start_tracking(tracker: SweepTracker, experiment: ExperimentConfig, task: SampleTask) -> str:
    point = experiment.grid[task.grid_index]
    return tracker.start_run(experiment.name, point.label, task.algorithms[0], task.sample_index)


def _finish_tracking(tracker: SweepTracker, run_id: str, sample: List[SampleMeasurement]) -> None:
    measured = [m for m in sample if not m.skipped]
    if measured:
        tracker.complete_run(run_id, measured[0].value, measured[0].runtime_us)
    else:
        tracker.skip_run(run_id, "oracle limit exceeded")


def _run_serial(tasks: List[SampleTask], experiment: ExperimentConfig,
                tracker: SweepTracker) -> List[List[SampleMeasurement]]:
    results = []
    for task in tasks:
        run_id = _start_tracking(tracker, experiment, task)
        try:
            sample = evaluate_sample(task)
        except Exception as e:
            tracker.fail_run(run_id, str(e))
            raise
        _finish_tracking(tracker, run_id, sample)
        results.append(sample)
    return results


def _run_pool(tasks: List[SampleTask], experiment: ExperimentConfig, tracker: SweepTracker,
              workers: int) -> List[List[SampleMeasurement]]:
    """완료 순서대로 추적하고, 결과는 작업 순서 자리에 채운다"""
    results: List[Optional[List[SampleMeasurement]]] = [None] * len(tasks)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        pending = {}
        for index, task in enumerate(tasks):
            run_id = _start_tracking(tracker, experiment, task)
            pending[pool.submit(evaluate_sample, task)] = (index, run_id)

        for future in as_completed(pending):
            index, run_id = pending[future]
            try:
                sample = future.result()
            except Exception as e:
                tracker.fail_run(run_id, str(e))
                for other in pending:
                    other.cancel()
                raise
            _finish_tracking(tracker, run_id, sample)
            results[index] = sample
    return results


def run_experiment(
    experiment: ExperimentConfig,
    workers: Optional[int] = None,
    timing: Optional[bool] = None,
    tracker: Optional[SweepTracker] = None,
    oracle_limits: Optional[OracleLimits] = None
) -> ResultsTable:
    """실험의 모든 grid point 와 샘플을 실행하여 집계

    작업 단위는 (grid point, 샘플, 알고리즘) 이며 tracker 는 실행 시점에 갱신된다.
    workers > 1 이면 프로세스 풀에서 실행하되, 집계는 항상 작업 순서대로 한다.
    """
    experiment.validate()
    workers = settings.sweep.workers if workers is None else workers
    timing = settings.sweep.timing if timing is None else timing
    oracle_limits = oracle_limits or OracleLimits()
    tracker = tracker or SweepTracker()
    start_time = time.time()

    tasks = [
        SampleTask(
            grid_index=grid_index,
            sample_index=sample_index,
            config=experiment.point_config(point).with_overrides(
                seed=sample_seed(experiment.seed, grid_index, sample_index)),
            algorithms=(algorithm,),
            measure=experiment.measure,
            rate=point.rate,
            timing=timing,
            oracle_max_vertices=oracle_limits.max_vertices
        )
        for grid_index, point in enumerate(experiment.grid)
        for sample_index in range(experiment.samples)
        for algorithm in experiment.algorithms
    ]
    tracker.expect(len(tasks))

    harness_logger.log_event("sweep_start", {
        "experiment": experiment.name, "grid_points": len(experiment.grid),
        "samples": experiment.samples, "workers": workers
    })

    try:
        if workers > 1:
            results = _run_pool(tasks, experiment, tracker, workers)
        else:
            results = _run_serial(tasks, experiment, tracker)
    except Exception as e:
        harness_logger.log_error(e, f"sweep '{experiment.name}'")
        raise

    per_sample: Dict[Tuple[int, int], List[SampleMeasurement]] = {}
    for task, sample in zip(tasks, results):
        per_sample.setdefault((task.grid_index, task.sample_index), []).extend(sample)

    table = ResultsTable(experiment=experiment.name)
    labels = TRADEOFF_LABELS if experiment.measure == "tradeoff" else experiment.algorithms
    for grid_index, point in enumerate(experiment.grid):
        for algorithm in labels:
            measurements = [
                next(m for m in per_sample[(grid_index, sample_index)] if m.algorithm == algorithm)
                for sample_index in range(experiment.samples)
            ]

            skipped = sum(1 for m in measurements if m.skipped)
            if skipped:
                table.skipped[(point.label, algorithm)] = skipped
            row = _aggregate(experiment, point, algorithm, measurements, timing)
            if row is not None:
                table.rows.append(row)
                harness_logger.log_sweep_point(experiment.name, point.label, algorithm, row.samples,
                                               row.mean_miss_ratio)

    harness_logger.log_performance("sweep", time.time() - start_time, {
        "experiment": experiment.name, "rows": len(table.rows), "skipped": table.total_skipped
    })
    return table
