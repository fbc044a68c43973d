"""
RSNC 스케줄러
한 번의 전송을 고르는 계획기 (전송률 임계값별 최대 가중치 clique + 지표 U)와
그래프가 빌 때까지 계획기를 반복하는 스케줄러 루프를 구현합니다.
"""

import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, Optional, Tuple

from src.coding.clique import CliqueResult, max_weight_clique
from src.coding.graph import CodingGraph, build_graph, clique_to_transmission, update_graph
from src.core.errors import PreconditionError
from src.core.models import Request, Scenario, Transmission, TransmissionLog
from src.core.quantities import tolerance
from src.scheduling.ledger import DeliveryLedger
from src.scheduling.metric import benefit_of, compute_l, definitely_missed, metric_u
from src.utils.logger import scheduler_logger

DecisionCallback = Callable[[int, "PropagationDecision"], None]


@dataclass(frozen=True)
class RateLadder:
    """TR: 목적지 최대 전송률의 서로 다른 값들 (오름차순). Tr_k 는 1 부터 센다"""
    rates: Tuple[float, ...]

    @classmethod
    def from_scenario(cls, scenario: Scenario) -> "RateLadder":
        return cls(rates=tuple(sorted({d.max_rate for d in scenario.destinations})))

    def __len__(self) -> int:
        return len(self.rates)

    def __iter__(self) -> Iterator[float]:
        return iter(self.rates)

    def threshold(self, k: int) -> float:
        if not 1 <= k <= len(self.rates):
            raise IndexError(f"Rate index {k} outside 1..{len(self.rates)}")
        return self.rates[k - 1]

    def index_of(self, rate: float) -> int:
        """rate 이하인 가장 높은 임계값의 인덱스 k"""
        eps = tolerance()
        admitted = [k for k, threshold in enumerate(self.rates, start=1) if threshold <= rate + eps]
        if not admitted:
            raise IndexError(f"Rate {rate} is below every threshold")
        return admitted[-1]


@dataclass(frozen=True)
class RateCandidate:
    """임계값 Tr_k 하나에 대한 평가 결과"""
    k: int
    threshold: float
    clique: CliqueResult
    rate: float  # r'_k, clique 가 비면 Tr_k
    f: frozenset
    l: frozenset
    u_value: float
    loss: float
    eligible: bool  # 빈 clique 는 선택 대상이 아님

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "threshold": self.threshold,
            "clique": [v.key for v in self.clique.vertices],
            "rate": self.rate,
            "u": self.u_value,
            "loss": self.loss,
            "eligible": self.eligible
        }


@dataclass(frozen=True)
class PropagationDecision:
    """계획기가 고른 전송 하나"""
    clique: CliqueResult
    transmission: Transmission
    u_value: float
    f: frozenset
    l: frozenset
    chosen_rate_index: int
    candidates: Tuple[RateCandidate, ...] = field(default=())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "transmission": self.transmission.describe(),
            "k": self.chosen_rate_index,
            "u": self.u_value,
            "f": [r.key for r in sorted(self.f)],
            "l": [r.key for r in sorted(self.l)]
        }


def _evaluate_threshold(scenario: Scenario, graph: CodingGraph, k: int, threshold: float) -> RateCandidate:
    eps = tolerance()
    clique = max_weight_clique(graph, lambda v: scenario.max_rate(v.dest) >= threshold - eps)
    outstanding = frozenset(Request(v.dest, v.packet) for v in graph.vertices)

    if clique.is_empty:
        # Q_k 가 비면 f=∅, r'_k = Tr_k 로 l 을 계산 (선택 대상에서는 제외)
        rate = threshold
        f = frozenset()
        l = definitely_missed(scenario, scenario.packet_size / rate, sorted(outstanding))
    else:
        transmission = clique_to_transmission(graph, clique.members, scenario)
        rate = transmission.rate
        f = frozenset(Request(v.dest, v.packet) for v in clique.members)
        l = compute_l(scenario, transmission, f, outstanding)

    return RateCandidate(
        k=k,
        threshold=threshold,
        clique=clique,
        rate=rate,
        f=f,
        l=l,
        u_value=metric_u(scenario, f, l),
        loss=benefit_of(scenario, sorted(l)),
        eligible=not clique.is_empty
    )


def plan_one_propagation(scenario: Scenario, graph: CodingGraph) -> PropagationDecision:
    """모든 임계값 Tr_k 에 대해 U_k 를 계산하고 가장 좋은 전송을 고른다

    U 최대 → 손실(Σα over l) 최소 → 작은 k 순으로 선택한다.
    """
    if graph.is_empty:
        raise PreconditionError("Cannot plan a propagation on an empty coding graph")

    ladder = RateLadder.from_scenario(scenario)
    candidates = tuple(
        _evaluate_threshold(scenario, graph, k, threshold)
        for k, threshold in enumerate(ladder, start=1)
    )

    # 그래프가 비어 있지 않으면 최소 Tr_1 에서는 항상 clique 가 존재한다
    eps = tolerance()
    eligible = [c for c in candidates if c.eligible]
    best_u = max(c.u_value for c in eligible)
    winners = [c for c in eligible if c.u_value >= best_u - eps]
    least_loss = min(c.loss for c in winners)
    chosen = next(c for c in winners if c.loss <= least_loss + eps)

    return PropagationDecision(
        clique=chosen.clique,
        transmission=clique_to_transmission(graph, chosen.clique.members, scenario),
        u_value=chosen.u_value,
        f=chosen.f,
        l=chosen.l,
        chosen_rate_index=chosen.k,
        candidates=candidates
    )


def run_rsnc(scenario: Scenario, on_decision: Optional[DecisionCallback] = None) -> TransmissionLog:
    """그래프가 빌 때까지 plan_one_propagation 을 반복

    on_decision(round, decision) 은 라운드마다 호출된다 (CLI trace 용).
    """
    start_time = time.time()
    graph = build_graph(scenario)
    ledger = DeliveryLedger(scenario, "rsnc")

    round_index = 0
    while not graph.is_empty:
        round_index += 1
        decision = plan_one_propagation(graph.scenario, graph)
        if on_decision:
            on_decision(round_index, decision)

        delivered = ledger.apply(decision.transmission)
        scheduler_logger.log_propagation("rsnc", round_index, decision.to_dict())

        graph = update_graph(
            graph,
            graph.scenario,
            decision.transmission.delay,
            served=delivered | decision.f,
            doomed=decision.l - delivered
        )

    log = ledger.finish()
    scheduler_logger.log_run("rsnc", log.total_requests, log.misses, len(log.transmissions),
                             time.time() - start_time)
    return log
