"""
기본 물리량과 시나리오 검증
r_min, 수신 성공 판정, validate_scenario 를 제공합니다.
"""

import math

from config.settings import settings
from src.core.errors import DomainError
from src.core.models import Scenario, ValidationReport, ValidationViolation


def tolerance() -> float:
    """실수 비교에 쓰는 절대 허용 오차"""
    return settings.scheduler.tolerance


def r_min(scenario: Scenario, dest: int, packet: int) -> float:
    """데드라인을 지키기 위한 최소 전송률 B / T(d, p)

    현재(갱신된) 데드라인 기준이며, 데드라인이 0 이하이면 어떤 전송률로도 불가능하므로 inf.
    """
    destination = scenario.destination(dest)
    if packet not in destination.wants:
        raise DomainError(f"Packet p{packet} is not wanted by d{dest}")

    deadline = destination.deadlines[packet]
    if deadline <= tolerance():
        return math.inf
    return scenario.packet_size / deadline


def receives(scenario: Scenario, dest: int, rate: float) -> bool:
    """전송률 rate 로 보낸 패킷을 d 가 수신할 수 있는지 (r <= r(s, d))"""
    return rate <= scenario.max_rate(dest) + tolerance()


def is_feasible(scenario: Scenario, dest: int, packet: int) -> bool:
    """(d, p) 가 아직 데드라인 안에 도달할 수 있는지: r_min <= r(s, d)"""
    return r_min(scenario, dest, packet) <= scenario.max_rate(dest) + tolerance()


def validate_scenario(scenario: Scenario) -> ValidationReport:
    """모든 Scenario/DestinationState 불변식 위반을 수집하여 반환"""
    report = ValidationReport()
    violations = report.violations

    if not scenario.packet_size > 0:
        violations.append(ValidationViolation("nonpositive_packet_size", "packet_size must be positive"))

    if len(scenario.benefits) != scenario.n_packets:
        violations.append(ValidationViolation(
            "benefits_length",
            f"benefits has {len(scenario.benefits)} entries for {scenario.n_packets} packets"
        ))

    for packet, benefit in enumerate(scenario.benefits):
        if not benefit > 0:
            violations.append(ValidationViolation(
                "nonpositive_benefit", f"benefit of p{packet} must be positive", packet=packet
            ))

    for dest, state in enumerate(scenario.destinations):
        for packet in sorted(state.wants | state.has):
            if not 0 <= packet < scenario.n_packets:
                violations.append(ValidationViolation(
                    "unknown_packet", f"d{dest} references unknown packet p{packet}", dest, packet
                ))

        for packet in sorted(state.has & state.wants):
            violations.append(ValidationViolation(
                "has_wants_overlap", f"has∩wants nonempty: p{packet} at d{dest}", dest, packet
            ))

        if set(state.deadlines) != set(state.wants):
            violations.append(ValidationViolation(
                "deadline_keys_mismatch", f"deadlines of d{dest} are not defined exactly on wants", dest
            ))

        for packet in sorted(state.deadlines):
            deadline = state.deadlines[packet]
            if not deadline > 0:
                violations.append(ValidationViolation(
                    "nonpositive_deadline", f"nonpositive deadline T(d{dest},p{packet})={deadline}", dest, packet
                ))

        if not state.max_rate > 0:
            violations.append(ValidationViolation(
                "nonpositive_max_rate", f"max_rate of d{dest} must be positive", dest
            ))

    return report
