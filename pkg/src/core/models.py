"""
RSNC 도메인 데이터 모델
단일 홉 브로드캐스트 인스턴스(Scenario)와 전송 기록(TransmissionLog)을 정의합니다.
모든 타입은 생성 후 변경하지 않는 값 객체입니다.
"""

import math
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Iterable, List, NamedTuple, NewType, Optional, Tuple

from config.settings import settings
from src.core.errors import DocumentFormatError

PacketId = NewType("PacketId", int)
DestId = NewType("DestId", int)


class Request(NamedTuple):
    """(destination, wanted packet) 쌍 - coding graph 의 vertex 와 동일한 키"""
    dest: DestId
    packet: PacketId

    @property
    def key(self) -> str:
        return f"{self.dest}:{self.packet}"


@dataclass(frozen=True)
class DestinationState:
    """목적지 d_i 의 상태: R(d_i), H(d_i), 데드라인, 최대 전송률"""
    wants: frozenset
    has: frozenset
    deadlines: Dict[int, float]  # wants 의 각 패킷 -> 남은 시간 (초)
    max_rate: float  # r(s, d_i), bits/s

    def elapse(self, seconds: float) -> "DestinationState":
        """모든 데드라인을 seconds 만큼 감소시킨 상태 반환"""
        return replace(
            self,
            deadlines={packet: deadline - seconds for packet, deadline in self.deadlines.items()}
        )

    def to_dict(self) -> Dict[str, Any]:
        """딕셔너리로 변환"""
        return {
            "wants": sorted(self.wants),
            "has": sorted(self.has),
            "deadlines": {str(packet): self.deadlines[packet] for packet in sorted(self.deadlines)},
            "max_rate": self.max_rate
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DestinationState":
        return cls(
            wants=frozenset(PacketId(int(p)) for p in data["wants"]),
            has=frozenset(PacketId(int(p)) for p in data["has"]),
            deadlines={PacketId(int(p)): float(t) for p, t in data["deadlines"].items()},
            max_rate=float(data["max_rate"])
        )


@dataclass(frozen=True)
class Scenario:
    """단일 홉 RSNC 인스턴스

    deadlines 는 "현재 시점 기준 남은 시간"이다. 원본 시나리오는 t=0 의 값을 갖고,
    elapse() 로 얻은 작업 상태는 전송이 진행된 만큼 줄어든 값을 갖는다.
    """
    packet_size: float  # B (bits)
    n_packets: int
    destinations: Tuple[DestinationState, ...]
    benefits: Tuple[float, ...]  # alpha_j

    @classmethod
    def create(
        cls,
        packet_size: float,
        destinations: Iterable[DestinationState],
        benefits: Optional[Iterable[float]] = None,
        n_packets: Optional[int] = None
    ) -> "Scenario":
        """기본 benefit(1.0)과 패킷 수를 채워서 시나리오 생성"""
        destinations = tuple(destinations)
        if benefits is not None:
            benefits = tuple(float(b) for b in benefits)
        if n_packets is None:
            if benefits is not None:
                n_packets = len(benefits)
            else:
                referenced = [p for d in destinations for p in (*d.wants, *d.has)]
                n_packets = max(referenced) + 1 if referenced else 0
        if benefits is None:
            benefits = (1.0,) * n_packets
        return cls(packet_size=float(packet_size), n_packets=n_packets,
                   destinations=destinations, benefits=benefits)

    @property
    def n_destinations(self) -> int:
        return len(self.destinations)

    def destination(self, dest: int) -> DestinationState:
        return self.destinations[dest]

    def max_rate(self, dest: int) -> float:
        return self.destinations[dest].max_rate

    def deadline(self, dest: int, packet: int) -> float:
        return self.destinations[dest].deadlines[packet]

    def benefit(self, packet: int) -> float:
        return self.benefits[packet]

    def requests(self) -> Tuple[Request, ...]:
        """모든 (d_i, p_j), p_j ∈ R(d_i) 를 (dest, packet) 순으로 반환"""
        return tuple(
            Request(DestId(i), PacketId(p))
            for i, dest in enumerate(self.destinations)
            for p in sorted(dest.wants)
        )

    @property
    def total_requests(self) -> int:
        return sum(len(dest.wants) for dest in self.destinations)

    def elapse(self, seconds: float) -> "Scenario":
        """모든 데드라인을 seconds 만큼 감소시킨 작업 상태 반환"""
        if seconds == 0:
            return self
        return replace(self, destinations=tuple(d.elapse(seconds) for d in self.destinations))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "packet_size": self.packet_size,
            "benefits": list(self.benefits),
            "destinations": [d.to_dict() for d in self.destinations]
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Scenario":
        return cls.create(
            packet_size=data["packet_size"],
            destinations=[DestinationState.from_dict(d) for d in data["destinations"]],
            benefits=data["benefits"]
        )


@dataclass(frozen=True)
class Transmission:
    """한 번의 전송: XOR 된 패킷 집합 P', 전송률 r, 의도된 수신자 D'

    delay 는 저장하지 않고 B / rate 로 유도한다.
    """
    coded_set: frozenset
    rate: float
    intended: frozenset
    packet_size: float

    def __post_init__(self):
        if not self.coded_set:
            raise ValueError("Transmission requires a nonempty coded set")
        if not self.rate > 0:
            raise ValueError(f"Transmission rate must be positive, got {self.rate}")

    @property
    def delay(self) -> float:
        return self.packet_size / self.rate

    def describe(self) -> str:
        """사람이 읽을 수 있는 표현 (예: 'p1⊕p2 @ 2000')"""
        payload = "⊕".join(f"p{p}" for p in sorted(self.coded_set))
        return f"{payload} @ {self.rate:g}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "coded_set": sorted(self.coded_set),
            "rate": self.rate,
            "delay": self.delay,
            "intended": sorted(self.intended)
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], packet_size: float) -> "Transmission":
        transmission = cls(
            coded_set=frozenset(PacketId(int(p)) for p in data["coded_set"]),
            rate=float(data["rate"]),
            intended=frozenset(DestId(int(d)) for d in data["intended"]),
            packet_size=packet_size
        )
        if "delay" in data and not math.isclose(float(data["delay"]), transmission.delay,
                                                rel_tol=1e-9, abs_tol=settings.scheduler.tolerance):
            raise DocumentFormatError(f"Transmission delay {data['delay']} does not equal B/rate")
        return transmission


@dataclass(frozen=True)
class RequestOutcome:
    """요청 (d_i, p_j) 의 최종 결과. missed 는 원본 데드라인 기준으로 계산"""
    dest: DestId
    packet: PacketId
    deadline: float  # 원본 데드라인 T(d_i, p_j)
    delivered_at: Optional[float] = None

    @property
    def missed(self) -> bool:
        return self.delivered_at is None or self.delivered_at > self.deadline + settings.scheduler.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dest": self.dest,
            "packet": self.packet,
            "delivered_at": self.delivered_at,
            "missed": self.missed
        }


@dataclass(frozen=True)
class TransmissionLog:
    """전체 전송 과정의 기록: 순서가 있는 전송 목록과 요청별 결과"""
    algorithm: str
    transmissions: Tuple[Transmission, ...]
    outcomes: Tuple[RequestOutcome, ...]

    @property
    def total_requests(self) -> int:
        return len(self.outcomes)

    @property
    def misses(self) -> int:
        return sum(1 for outcome in self.outcomes if outcome.missed)

    @property
    def arrival_times(self) -> List[float]:
        """각 전송의 도착 시각 (앞선 전송 delay 의 누적합)"""
        times, clock = [], 0.0
        for transmission in self.transmissions:
            clock += transmission.delay
            times.append(clock)
        return times

    def outcome(self, dest: int, packet: int) -> RequestOutcome:
        for outcome in self.outcomes:
            if outcome.dest == dest and outcome.packet == packet:
                return outcome
        raise KeyError(f"No request ({dest}, {packet}) in log")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "algorithm": self.algorithm,
            "transmissions": [t.to_dict() for t in self.transmissions],
            "outcomes": [o.to_dict() for o in self.outcomes]
        }


@dataclass
class ValidationViolation:
    """검증 위반 항목"""
    code: str
    message: str
    dest: Optional[int] = None
    packet: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"code": self.code, "message": self.message, "dest": self.dest, "packet": self.packet}


@dataclass
class ValidationReport:
    """validate_scenario 의 결과. 위반이 없으면 유효한 시나리오"""
    violations: List[ValidationViolation] = field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        return not self.violations

    @property
    def codes(self) -> List[str]:
        return [v.code for v in self.violations]

    def summary(self) -> str:
        return "; ".join(v.message for v in self.violations) or "valid"

    def __len__(self) -> int:
        return len(self.violations)
