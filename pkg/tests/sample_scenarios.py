"""
테스트용 샘플 시나리오
두 가지 전송률 예제(세 목적지, 세 패킷)와 경계 상황 시나리오, 무작위 생성 설정 모음
"""

from src.core.models import DestinationState, Scenario, Transmission
from src.harness.generator import GenConfig

# 두 가지 전송률 예제: B = 10k bits, 전송률 5k/2k/2k, 데드라인 4/8/8 초
# d0 는 p0 를, d1 은 p1 을, d2 는 p2 를 원하고 나머지 두 패킷은 이미 가지고 있다
TWO_RATE_PACKET_SIZE = 10_000.0
TWO_RATE_RATES = (5_000.0, 2_000.0, 2_000.0)
TWO_RATE_DEADLINES = (4.0, 8.0, 8.0)


def two_rate_example() -> Scenario:
    destinations = []
    for i in range(3):
        destinations.append(DestinationState(
            wants=frozenset({i}),
            has=frozenset({0, 1, 2} - {i}),
            deadlines={i: TWO_RATE_DEADLINES[i]},
            max_rate=TWO_RATE_RATES[i]
        ))
    return Scenario.create(packet_size=TWO_RATE_PACKET_SIZE, destinations=destinations)


def forced_all_in_one_transmission(scenario: Scenario) -> Transmission:
    """세 패킷을 모두 XOR 해서 모두가 받을 수 있는 2k/s 로 한 번에 보내는 전송"""
    return Transmission(
        coded_set=frozenset({0, 1, 2}),
        rate=2_000.0,
        intended=frozenset({0, 1, 2}),
        packet_size=scenario.packet_size
    )


def infeasible_example() -> Scenario:
    """d0 의 유일한 요청은 최고 전송률로도 데드라인을 지킬 수 없음 (B/r = 5 > 3)"""
    return Scenario.create(
        packet_size=10.0,
        destinations=[
            DestinationState(wants=frozenset({0}), has=frozenset(), deadlines={0: 3.0}, max_rate=2.0),
            DestinationState(wants=frozenset({1}), has=frozenset({0}), deadlines={1: 20.0}, max_rate=4.0),
        ]
    )


def all_infeasible_example() -> Scenario:
    return Scenario.create(
        packet_size=100.0,
        destinations=[
            DestinationState(wants=frozenset({0, 1}), has=frozenset(), deadlines={0: 1.0, 1: 2.0}, max_rate=10.0),
            DestinationState(wants=frozenset({1}), has=frozenset({0}), deadlines={1: 0.5}, max_rate=50.0),
        ]
    )


def single_request_example() -> Scenario:
    return Scenario.create(
        packet_size=100.0,
        destinations=[DestinationState(wants=frozenset({0}), has=frozenset(), deadlines={0: 10.0}, max_rate=40.0)]
    )


def empty_wants_example() -> Scenario:
    return Scenario.create(
        packet_size=100.0,
        destinations=[
            DestinationState(wants=frozenset(), has=frozenset({0}), deadlines={}, max_rate=10.0),
            DestinationState(wants=frozenset(), has=frozenset(), deadlines={}, max_rate=20.0),
        ],
        n_packets=1
    )


def broadcast_example() -> Scenario:
    """p0 는 세 목적지가, p1 은 한 목적지만 원하고 데드라인은 모두 같다"""
    return Scenario.create(
        packet_size=10.0,
        destinations=[
            DestinationState(wants=frozenset({0}), has=frozenset(), deadlines={0: 12.0}, max_rate=10.0),
            DestinationState(wants=frozenset({0}), has=frozenset(), deadlines={0: 12.0}, max_rate=10.0),
            DestinationState(wants=frozenset({0, 1}), has=frozenset(), deadlines={0: 12.0, 1: 12.0}, max_rate=10.0),
        ]
    )


# 무작위 생성 설정 (oracle 로 다룰 수 있는 작은 크기)
TINY_CONFIG = GenConfig(n=4, m=3, rmin=10, rmax=100, tmin=2, tmax=12, packet_size=20.0,
                        has_density=0.5, wants_density=0.35)
SMALL_CONFIG = GenConfig(n=6, m=5, rmin=10, rmax=100, tmin=2, tmax=20, packet_size=20.0,
                         has_density=0.5, wants_density=0.3)
SWEEP_CONFIG = GenConfig(n=10, m=20, rmin=10, rmax=100, tmin=10, tmax=50)

SAMPLE_CONFIGS = {
    "tiny": TINY_CONFIG,
    "small": SMALL_CONFIG,
    "sweep": SWEEP_CONFIG,
}


def get_sample_config(name: str = "tiny", seed: int = 0) -> GenConfig:
    """이름별 생성 설정에 시드를 넣어 반환"""
    if name not in SAMPLE_CONFIGS:
        raise KeyError(f"Unknown sample config '{name}'")
    return SAMPLE_CONFIGS[name].with_overrides(seed=seed)
