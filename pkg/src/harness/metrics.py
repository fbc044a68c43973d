"""
실험 지표
deadline miss ratio, 단일 전송 tradeoff, 추세 상관계수, 계획기의 U 최적성 비율, 스케줄러 간 miss 수 순서.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.stats import spearmanr

from src.coding.clique import max_weight_clique
from src.coding.graph import CodingGraph, build_graph
from src.core.errors import OracleLimitExceeded, PreconditionError
from src.core.models import Request, Scenario, TransmissionLog
from src.core.quantities import r_min, tolerance
from src.harness.generator import GenConfig, generate_scenario
from src.scheduling.baselines import run_dsf, run_sin1
from src.scheduling.metric import benefit_of, definitely_missed
from src.scheduling.oracle import OracleLimits, brute_force_u_max, optimal_schedule
from src.scheduling.rsnc import plan_one_propagation, run_rsnc
from src.utils.logger import harness_logger


def _require_coverage(log: TransmissionLog, scenario: Scenario) -> None:
    covered = [(o.dest, o.packet) for o in log.outcomes]
    if len(covered) != len(set(covered)) or set(covered) != set(scenario.requests()):
        raise PreconditionError(f"Log '{log.algorithm}' does not cover the scenario's request set")


def deadline_miss_ratio(log: TransmissionLog, scenario: Scenario) -> float:
    """놓친 요청 수 / 전체 요청 수 (요청이 없으면 0)"""
    _require_coverage(log, scenario)
    if scenario.total_requests == 0:
        return 0.0
    return log.misses / scenario.total_requests


def recount_misses(log: TransmissionLog, scenario: Scenario) -> int:
    """전송 도착 시각과 원본 데드라인만으로 미스 수를 다시 센다"""
    _require_coverage(log, scenario)
    eps = tolerance()
    arrivals = log.arrival_times
    misses = 0
    for outcome in log.outcomes:
        if outcome.delivered_at is None:
            misses += 1
            continue
        if not any(math.isclose(outcome.delivered_at, a, rel_tol=1e-12, abs_tol=eps) for a in arrivals):
            raise PreconditionError(
                f"Request ({outcome.dest}, {outcome.packet}) delivered at {outcome.delivered_at}, "
                f"which is not a transmission arrival time"
            )
        if outcome.delivered_at > scenario.deadline(outcome.dest, outcome.packet) + eps:
            misses += 1
    return misses


@dataclass(frozen=True)
class TradeoffPoint:
    """후보 전송률 하나에서 한 번 전송했을 때의 결과"""
    rate: float
    satisfied: float  # 제시간 복호되는 요청의 benefit 합
    failed: float  # 이 전송 이후 반드시 놓치는 요청의 benefit 합


def single_tx_tradeoff(scenario: Scenario, rate: float, graph: Optional[CodingGraph] = None) -> TradeoffPoint:
    """고정 전송률 rate 로 최대 가중치 clique 하나를 보냈을 때의 만족/실패 요청

    rate 로 수신 가능하고 (max_rate >= rate) 제시간 도착하는 (r_min <= rate) vertex 만 후보가 된다.
    """
    if not rate > 0:
        raise PreconditionError(f"Candidate rate must be positive, got {rate}")
    if graph is None:
        graph = build_graph(scenario)
    eps = tolerance()

    clique = max_weight_clique(
        graph,
        lambda v: scenario.max_rate(v.dest) >= rate - eps and r_min(scenario, v.dest, v.packet) <= rate + eps
    )
    others = sorted(Request(v.dest, v.packet) for v in graph.vertices if v not in clique.members)
    failed = definitely_missed(scenario, scenario.packet_size / rate, others)
    return TradeoffPoint(rate=rate, satisfied=clique.weight, failed=benefit_of(scenario, sorted(failed)))


def trend_correlation(values: Sequence[float]) -> float:
    """grid 인덱스에 대한 Spearman 상관계수 (상수열이면 nan)"""
    if len(values) < 2:
        raise PreconditionError("Trend correlation needs at least two values")
    values = np.asarray(values, dtype=float)
    if np.all(values == values[0]):
        return float("nan")
    rho, _ = spearmanr(np.arange(len(values)), values)
    return float(rho)


@dataclass(frozen=True)
class UOptimalityReport:
    evaluated: int
    matched: int
    skipped: int

    @property
    def fraction(self) -> float:
        return self.matched / self.evaluated if self.evaluated else float("nan")


def measure_u_optimality(
    config: GenConfig,
    samples: int,
    seed: int,
    limits: Optional[OracleLimits] = None
) -> UOptimalityReport:
    """plan_one_propagation 의 U 가 전수 탐색 최댓값과 같은 인스턴스의 비율 (보고용)"""
    limits = limits or OracleLimits()
    eps = tolerance()
    seeds = np.random.SeedSequence(seed).generate_state(samples, dtype=np.uint64)

    evaluated = matched = skipped = 0
    for sample_seed in seeds:
        scenario = generate_scenario(config.with_overrides(seed=int(sample_seed)))
        graph = build_graph(scenario)
        if graph.is_empty:
            continue
        try:
            _, _, u_star = brute_force_u_max(scenario, graph, limits)
        except OracleLimitExceeded:
            skipped += 1
            continue
        evaluated += 1
        if abs(plan_one_propagation(scenario, graph).u_value - u_star) <= eps:
            matched += 1

    report = UOptimalityReport(evaluated=evaluated, matched=matched, skipped=skipped)
    harness_logger.log_event("u_optimality", {
        "evaluated": evaluated, "matched": matched, "skipped": skipped, "fraction": report.fraction
    })
    return report


@dataclass(frozen=True)
class OrderingReport:
    """스케줄러 간 miss 수 비교 결과"""
    evaluated: int
    oracle_dominates: int  # oracle <= rsnc, dsf, sin1
    rsnc_within_baselines: int  # rsnc <= max(dsf, sin1)
    skipped: int

    @property
    def fraction(self) -> float:
        return self.rsnc_within_baselines / self.evaluated if self.evaluated else float("nan")


def measure_scheduler_ordering(
    config: GenConfig,
    seeds: Iterable[int],
    limits: Optional[OracleLimits] = None
) -> OrderingReport:
    """seed 별 시나리오에서 oracle 과 세 스케줄러의 miss 수를 비교 (oracle 한도 초과는 skip)"""
    limits = limits or OracleLimits()
    evaluated = dominated = within = skipped = 0
    for seed in seeds:
        scenario = generate_scenario(config.with_overrides(seed=int(seed)))
        try:
            best = optimal_schedule(scenario, limits).min_misses
        except OracleLimitExceeded:
            skipped += 1
            continue
        misses = {name: scheduler(scenario).misses
                  for name, scheduler in (("rsnc", run_rsnc), ("dsf", run_dsf), ("sin1", run_sin1))}
        evaluated += 1
        if all(best <= value for value in misses.values()):
            dominated += 1
        if misses["rsnc"] <= max(misses["dsf"], misses["sin1"]):
            within += 1

    report = OrderingReport(evaluated=evaluated, oracle_dominates=dominated,
                            rsnc_within_baselines=within, skipped=skipped)
    harness_logger.log_event("scheduler_ordering", {
        "evaluated": evaluated, "oracle_dominates": dominated,
        "rsnc_within_baselines": within, "skipped": skipped, "fraction": report.fraction
    })
    return report
