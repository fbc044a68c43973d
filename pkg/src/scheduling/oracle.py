"""
Oracle 스케줄러
작은 인스턴스에서 전송 순서 전체를 탐색해 최소 deadline miss 수를 구합니다.
- optimal_schedule: 갱신되는 coding graph 위의 메모이제이션 + 가지치기 탐색
- exhaustive_min_misses: 가지치기 없는 순수 재귀 (독립 검증용)
- integer_program_min_misses: 초기 그래프의 clique 분할을 정수계획 제약 그대로 채점
- brute_force_u_max: 한 번의 전송에 대한 지표 U 의 전역 최댓값
"""

import time
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from config.settings import settings
from src.coding.clique import CliqueResult, enumerate_cliques
from src.coding.graph import CodingGraph, Vertex, build_graph, clique_to_transmission, update_graph
from src.core.errors import InvalidConfigError, OracleLimitExceeded
from src.core.models import Request, Scenario, Transmission, TransmissionLog
from src.core.quantities import tolerance
from src.scheduling.ledger import replay_schedule
from src.scheduling.metric import benefit_of, compute_f, compute_l, metric_u
from src.scheduling.rsnc import RateLadder
from src.utils.logger import oracle_logger


@dataclass(frozen=True)
class OracleLimits:
    """탐색 한계. max_transmissions 가 None 이면 |V| 까지 허용"""
    max_vertices: int = field(default_factory=lambda: settings.oracle.max_vertices)
    max_transmissions: Optional[int] = None

    def __post_init__(self):
        if self.max_vertices <= 0:
            raise InvalidConfigError(f"max_vertices must be positive, got {self.max_vertices}")
        if self.max_transmissions is not None and self.max_transmissions <= 0:
            raise InvalidConfigError(f"max_transmissions must be positive, got {self.max_transmissions}")

    def check(self, graph: CodingGraph) -> None:
        if len(graph) > self.max_vertices:
            raise OracleLimitExceeded(len(graph), self.max_vertices)

    def budget(self, graph: CodingGraph) -> int:
        return len(graph) if self.max_transmissions is None else self.max_transmissions


@dataclass(frozen=True)
class OracleResult:
    best_log: TransmissionLog
    min_misses: int
    schedules_explored: int


def _step(graph: CodingGraph, clique: Tuple[Vertex, ...]) -> Tuple[Transmission, FrozenSet[Request], CodingGraph]:
    """clique 하나를 전송하고 (전송, 제시간 전달 요청, 갱신된 그래프) 반환"""
    transmission = clique_to_transmission(graph, clique)
    delivered = compute_f(graph.scenario, transmission, graph.vertices)
    following = update_graph(graph, graph.scenario, transmission.delay, served=delivered | frozenset(clique))
    return transmission, delivered, following


class _ScheduleSearch:
    """(남은 vertex, 경과 시간, 남은 전송 수) 상태 위의 최대 전달 수 탐색"""

    def __init__(self, cap: int):
        self.cap = cap
        self.explored = 0
        self._memo: Dict[tuple, Tuple[int, List[Transmission]]] = {}

    def best(self, graph: CodingGraph, clock: float, budget: int) -> Tuple[int, List[Transmission]]:
        if graph.is_empty or budget == 0:
            return 0, []
        key = (graph.vertices, round(clock, 9), budget)
        if key in self._memo:
            return self._memo[key]

        best_count, best_plan = 0, []
        # 큰 clique 부터 보면 좋은 해를 빨리 찾는다
        for clique in reversed(enumerate_cliques(graph, cap=self.cap)):
            self.explored += 1
            transmission, delivered, following = _step(graph, clique)
            if len(delivered) + len(following) <= best_count:
                continue
            count, plan = self.best(following, clock + transmission.delay, budget - 1)
            if len(delivered) + count > best_count:
                best_count, best_plan = len(delivered) + count, [transmission] + plan
            if best_count == len(graph):
                break

        self._memo[key] = (best_count, best_plan)
        return best_count, best_plan


def optimal_schedule(scenario: Scenario, limits: Optional[OracleLimits] = None) -> OracleResult:
    """미스 수를 최소화하는 전송 순서 (갱신되는 그래프의 clique 열)"""
    limits = limits or OracleLimits()
    start_time = time.time()
    graph = build_graph(scenario)
    limits.check(graph)

    search = _ScheduleSearch(cap=limits.max_vertices)
    _, plan = search.best(graph, 0.0, limits.budget(graph))
    log = replay_schedule(scenario, plan, algorithm="oracle")

    oracle_logger.log_oracle(search.explored, log.misses, time.time() - start_time)
    return OracleResult(best_log=log, min_misses=log.misses, schedules_explored=search.explored)


def exhaustive_min_misses(scenario: Scenario, limits: Optional[OracleLimits] = None) -> int:
    """가지치기/메모이제이션 없이 모든 전송 순서를 나열한 최소 미스 수"""
    limits = limits or OracleLimits()
    graph = build_graph(scenario)
    limits.check(graph)

    def most_delivered(current: CodingGraph, budget: int) -> int:
        if current.is_empty or budget == 0:
            return 0
        best = 0
        for clique in enumerate_cliques(current, cap=limits.max_vertices):
            _, delivered, following = _step(current, clique)
            best = max(best, len(delivered) + most_delivered(following, budget - 1))
        return best

    return scenario.total_requests - most_delivered(graph, limits.budget(graph))


def integer_program_min_misses(scenario: Scenario, limits: Optional[OracleLimits] = None) -> int:
    """초기 그래프 vertex 를 clique 들의 순서 있는 분할로 나누어 정수계획 목적함수로 채점

    h 번째 clique 의 전송 시간 T_h = B / (clique 최소 최대 전송률), 도착 시각은 T_1..T_h 의 합.
    z = 1 ⇔ 도착 시각 > 원본 데드라인. 그래프에 들어가지 못한 요청은 항상 z = 1.
    """
    limits = limits or OracleLimits()
    graph = build_graph(scenario)
    limits.check(graph)
    eps = tolerance()
    memo: Dict[Tuple[FrozenSet[Vertex], float], int] = {}

    def fewest_misses(remaining: FrozenSet[Vertex], clock: float) -> int:
        if not remaining:
            return 0
        key = (remaining, round(clock, 9))
        if key in memo:
            return memo[key]
        best = len(remaining)
        for clique in enumerate_cliques(graph.induced(remaining), cap=limits.max_vertices):
            arrival = clock + scenario.packet_size / min(scenario.max_rate(v.dest) for v in clique)
            late = sum(1 for v in clique if arrival > scenario.deadline(v.dest, v.packet) + eps)
            if late >= best:
                continue
            best = min(best, late + fewest_misses(remaining - frozenset(clique), arrival))
        memo[key] = best
        return best

    return (scenario.total_requests - len(graph)) + fewest_misses(frozenset(graph.vertices), 0.0)


def _u_better(candidate: tuple, incumbent: Optional[tuple], eps: float) -> bool:
    """(U, loss, k, clique) 비교: U 큰 순 → loss 작은 순 → k 작은 순 → 큰 clique → 사전순"""
    if incumbent is None:
        return True
    u, loss, k, clique = candidate
    best_u, best_loss, best_k, best_clique = incumbent
    if abs(u - best_u) > eps:
        return u > best_u
    if abs(loss - best_loss) > eps:
        return loss < best_loss
    if k != best_k:
        return k < best_k
    if len(clique) != len(best_clique):
        return len(clique) > len(best_clique)
    return clique < best_clique


def brute_force_u_max(
    scenario: Scenario,
    graph: CodingGraph,
    limits: Optional[OracleLimits] = None
) -> Tuple[CliqueResult, Optional[int], float]:
    """모든 clique 에 대해 U 를 계산한 전역 최댓값 (clique, rate index k, U)

    빈 그래프는 (빈 clique, None, 0.0) 을 반환한다.
    """
    if graph.is_empty:
        return CliqueResult.empty(), None, 0.0
    limits = limits or OracleLimits()
    limits.check(graph)

    eps = tolerance()
    ladder = RateLadder.from_scenario(scenario)
    outstanding = frozenset(Request(v.dest, v.packet) for v in graph.vertices)

    best: Optional[tuple] = None
    for clique in enumerate_cliques(graph, cap=limits.max_vertices):
        transmission = clique_to_transmission(graph, clique, scenario)
        f = frozenset(Request(v.dest, v.packet) for v in clique)
        l = compute_l(scenario, transmission, f, outstanding)
        candidate = (metric_u(scenario, f, l), benefit_of(scenario, sorted(l)),
                     ladder.index_of(transmission.rate), clique)
        if _u_better(candidate, best, eps):
            best = candidate

    u_value, _, k, clique = best
    return CliqueResult(members=frozenset(clique), weight=sum(graph.weights[v] for v in clique)), k, u_value
