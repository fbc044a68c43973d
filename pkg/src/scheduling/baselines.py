"""
비교용 베이스라인 스케줄러
- DSF: 전송률을 고려하지 않는 coding graph 에서 데드라인이 급한 clique 우선
- SIN-1: 코딩 없이 (가장 급한 남은 시간) / (요청 수) 가 최소인 패킷 우선
두 방식 모두 RSNC 와 같은 DeliveryLedger 로 수신/복호/데드라인을 판정합니다.
"""

import time
from collections import defaultdict
from typing import Dict, List, Tuple

from src.coding.clique import max_weight_clique
from src.coding.graph import (
    Vertex,
    build_rate_agnostic_graph,
    clique_to_transmission,
    update_graph,
)
from src.core.models import DestId, PacketId, Request, Scenario, Transmission, TransmissionLog
from src.core.quantities import tolerance
from src.scheduling.ledger import DeliveryLedger
from src.utils.logger import baseline_logger


def urgency_weight(scenario: Scenario, vertex: Vertex) -> float:
    """DSF vertex 가중치: 1 / 남은 데드라인"""
    return 1.0 / scenario.deadline(vertex.dest, vertex.packet)


def run_dsf(scenario: Scenario) -> TransmissionLog:
    """Deadline-smallest-first clique coding"""
    start_time = time.time()
    graph = build_rate_agnostic_graph(scenario, weights=urgency_weight)
    ledger = DeliveryLedger(scenario, "dsf")

    round_index = 0
    while not graph.is_empty:
        round_index += 1
        # 남은 데드라인이 매 라운드 줄어들므로 가중치를 다시 계산
        graph = graph.with_weights({v: urgency_weight(graph.scenario, v) for v in graph.vertices})
        clique = max_weight_clique(graph)
        transmission = clique_to_transmission(graph, clique.members)

        delivered = ledger.apply(transmission)
        late = frozenset(clique.members) - delivered
        baseline_logger.log_propagation("dsf", round_index, {
            "transmission": transmission.describe(),
            "delivered": len(delivered),
            "late": len(late)
        })

        graph = update_graph(graph, graph.scenario, transmission.delay, served=delivered, doomed=late)

    log = ledger.finish()
    baseline_logger.log_run("dsf", log.total_requests, log.misses, len(log.transmissions), time.time() - start_time)
    return log


def _meetable_requests(scenario: Scenario, pending) -> Dict[PacketId, List[Request]]:
    """최대 전송률로 보내면 아직 데드라인을 지킬 수 있는 미전달 요청 (패킷별)"""
    eps = tolerance()
    by_packet: Dict[PacketId, List[Request]] = defaultdict(list)
    for request in sorted(pending):
        if scenario.packet_size / scenario.max_rate(request.dest) <= scenario.deadline(*request) + eps:
            by_packet[request.packet].append(request)
    return by_packet


def sin1_value(scenario: Scenario, requests: List[Request]) -> float:
    """SIN-1 = 가장 급한 요청의 남은 시간 / 요청 수"""
    return min(scenario.deadline(*r) for r in requests) / len(requests)


def _sin1_choice(scenario: Scenario, by_packet: Dict[PacketId, List[Request]]) -> Tuple[PacketId, float, frozenset]:
    packet = min(by_packet, key=lambda p: (sin1_value(scenario, by_packet[p]), p))
    requesters = by_packet[packet]
    # 전송률은 데드라인을 지킬 수 있는 요청자들 중 최소 최대 전송률
    rate = min(scenario.max_rate(r.dest) for r in requesters)
    return packet, rate, frozenset(DestId(r.dest) for r in requesters)


def run_sin1(scenario: Scenario) -> TransmissionLog:
    """SIN-1: 코딩 없이 SIN-1 값이 가장 작은 패킷을 전송 (동률은 작은 PacketId)"""
    start_time = time.time()
    ledger = DeliveryLedger(scenario, "sin1")

    round_index = 0
    while True:
        by_packet = _meetable_requests(ledger.current, ledger.outstanding)
        if not by_packet:
            break
        round_index += 1
        packet, rate, intended = _sin1_choice(ledger.current, by_packet)
        transmission = Transmission(
            coded_set=frozenset({packet}),
            rate=rate,
            intended=intended,
            packet_size=scenario.packet_size
        )
        delivered = ledger.apply(transmission)
        baseline_logger.log_propagation("sin1", round_index, {
            "transmission": transmission.describe(),
            "delivered": len(delivered)
        })

    log = ledger.finish()
    baseline_logger.log_run("sin1", log.total_requests, log.misses, len(log.transmissions), time.time() - start_time)
    return log
