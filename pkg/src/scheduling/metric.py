"""
전송 평가 지표
f (이번 전송으로 제시간에 복호되는 요청), l (이번 전송 후 반드시 놓치는 요청),
그리고 순이익 지표 U = Σα·f − Σα·l 을 계산합니다.
"""

from typing import AbstractSet, Iterable, Optional

from src.coding.graph import decodes
from src.core.errors import PreconditionError
from src.core.models import Request, Scenario, Transmission
from src.core.quantities import tolerance

RequestSet = frozenset


def _outstanding(scenario: Scenario, outstanding: Optional[Iterable[Request]]) -> AbstractSet[Request]:
    if outstanding is None:
        return frozenset(scenario.requests())
    return frozenset(outstanding)


def compute_f(
    scenario: Scenario,
    transmission: Transmission,
    outstanding: Optional[Iterable[Request]] = None
) -> RequestSet:
    """(d_i, p_j) ∈ f ⇔ 수신 성공, p_j ∈ R(d_i), 나머지 패킷은 모두 H(d_i), B/r <= 현재 T(d_i, p_j)

    outstanding 이 주어지면 그 요청들만 대상으로 한다 (이미 전달된 요청 제외).
    """
    pending = _outstanding(scenario, outstanding)
    eps = tolerance()
    satisfied = set()
    for dest in range(scenario.n_destinations):
        packet = decodes(scenario, dest, transmission)
        if packet is None:
            continue
        request = Request(dest, packet)
        if request in pending and transmission.delay <= scenario.deadline(dest, packet) + eps:
            satisfied.add(request)
    return frozenset(satisfied)


def definitely_missed(scenario: Scenario, delay: float, requests: Iterable[Request]) -> RequestSet:
    """이번 전송 delay 이후 다음 전송을 최고 속도로 받아도 늦는 요청: B/r + B/r(s,d_i) > T(d_i,p_j)"""
    eps = tolerance()
    return frozenset(
        request for request in requests
        if delay + scenario.packet_size / scenario.max_rate(request.dest)
        > scenario.deadline(request.dest, request.packet) + eps
    )


def compute_l(
    scenario: Scenario,
    transmission: Transmission,
    f: AbstractSet[Request],
    outstanding: Optional[Iterable[Request]] = None
) -> RequestSet:
    """f 에 속하지 않은 미처리 요청 중 이번 전송 후 반드시 데드라인을 놓치는 요청"""
    pending = _outstanding(scenario, outstanding)
    return definitely_missed(scenario, transmission.delay, sorted(pending - frozenset(f)))


def benefit_of(scenario: Scenario, requests: Iterable[Request]) -> float:
    return sum(scenario.benefit(request.packet) for request in requests)


def metric_u(scenario: Scenario, f: AbstractSet[Request], l: AbstractSet[Request]) -> float:
    """U = Σ_{f} α_j − Σ_{l} α_j"""
    overlap = frozenset(f) & frozenset(l)
    if overlap:
        raise PreconditionError(f"f and l overlap on {sorted(overlap)}")
    return benefit_of(scenario, sorted(f)) - benefit_of(scenario, sorted(l))
