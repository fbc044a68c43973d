"""
전달 장부 (delivery ledger)
RSNC, 베이스라인, oracle 이 모두 같은 수신/복호/데드라인 판정을 쓰도록
전송 적용과 요청별 결과 기록을 한 곳에서 처리합니다.
"""

from typing import Dict, FrozenSet, Iterable, List

from src.core.models import Request, RequestOutcome, Scenario, Transmission, TransmissionLog
from src.scheduling.metric import compute_f


class DeliveryLedger:
    """전송을 순서대로 적용하며 시계, 남은 데드라인, 전달 시각을 관리"""

    def __init__(self, scenario: Scenario, algorithm: str):
        self.scenario = scenario
        self.algorithm = algorithm
        self.current = scenario  # 남은 데드라인 기준의 작업 상태
        self.clock = 0.0
        self.transmissions: List[Transmission] = []
        self.delivered_at: Dict[Request, float] = {}
        self._pending = set(scenario.requests())

    @property
    def outstanding(self) -> FrozenSet[Request]:
        """아직 전달되지 않은 요청"""
        return frozenset(self._pending)

    def apply(self, transmission: Transmission) -> FrozenSet[Request]:
        """전송 하나를 적용하고 이번에 제시간에 전달된 요청을 반환"""
        delivered = compute_f(self.current, transmission, self._pending)

        self.clock += transmission.delay
        for request in delivered:
            self.delivered_at[request] = self.clock
            self._pending.discard(request)

        self.transmissions.append(transmission)
        self.current = self.current.elapse(transmission.delay)
        return delivered

    def finish(self) -> TransmissionLog:
        outcomes = tuple(
            RequestOutcome(
                dest=request.dest,
                packet=request.packet,
                deadline=self.scenario.deadline(request.dest, request.packet),
                delivered_at=self.delivered_at.get(request)
            )
            for request in self.scenario.requests()
        )
        return TransmissionLog(algorithm=self.algorithm, transmissions=tuple(self.transmissions), outcomes=outcomes)


def replay_schedule(
    scenario: Scenario,
    transmissions: Iterable[Transmission],
    algorithm: str = "replay"
) -> TransmissionLog:
    """고정된 전송 목록을 장부에 그대로 적용한 결과"""
    ledger = DeliveryLedger(scenario, algorithm)
    for transmission in transmissions:
        ledger.apply(transmission)
    return ledger.finish()
