"""
시나리오 생성기
패킷/목적지 수, 전송률 범위, 데드라인 범위로부터 재현 가능한 무작위 시나리오를 만듭니다.
"""

from dataclasses import asdict, dataclass, field, fields, replace
from typing import Any, Dict

import numpy as np

from config.settings import settings
from src.core.errors import DocumentFormatError, InvalidConfigError
from src.core.models import DestinationState, PacketId, Scenario
from src.core.serialization import validate_document

MAX_SEED = 2 ** 64 - 1

_NUMBER = {"type": "number"}

GEN_CONFIG_SCHEMA: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["n", "m", "rmin", "rmax", "tmin", "tmax"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "m": {"type": "integer", "minimum": 1},
        "rmin": _NUMBER,
        "rmax": _NUMBER,
        "tmin": _NUMBER,
        "tmax": _NUMBER,
        "packet_size": _NUMBER,
        "has_density": _NUMBER,
        "wants_density": _NUMBER,
        "alpha": _NUMBER,
        "seed": {"type": "integer", "minimum": 0, "maximum": MAX_SEED}
    },
    "additionalProperties": False
}


def _check_schema(data: Any) -> None:
    try:
        validate_document(data, GEN_CONFIG_SCHEMA, "generator config")
    except DocumentFormatError as e:
        raise InvalidConfigError(str(e)) from e


@dataclass(frozen=True)
class GenConfig:
    """시나리오 생성 설정"""
    n: int  # 패킷 수
    m: int  # 목적지 수
    rmin: float
    rmax: float
    tmin: float
    tmax: float
    packet_size: float = field(default_factory=lambda: settings.generator.packet_size)
    has_density: float = field(default_factory=lambda: settings.generator.has_density)
    wants_density: float = field(default_factory=lambda: settings.generator.wants_density)
    alpha: float = field(default_factory=lambda: settings.generator.alpha)
    seed: int = 0

    def validate(self) -> None:
        """설정값 검증 - 타입은 스키마로, 범위 위반은 모아 InvalidConfigError 하나로 던짐"""
        _check_schema(self.to_dict())
        errors = []

        if self.n < 1:
            errors.append(f"n must be at least 1, got {self.n}")
        if self.m < 1:
            errors.append(f"m must be at least 1, got {self.m}")
        if not 0 < self.rmin <= self.rmax:
            errors.append(f"rates must satisfy 0 < rmin <= rmax, got [{self.rmin}, {self.rmax}]")
        if not 0 < self.tmin <= self.tmax:
            errors.append(f"deadlines must satisfy 0 < tmin <= tmax, got [{self.tmin}, {self.tmax}]")
        if not self.packet_size > 0:
            errors.append(f"packet_size must be positive, got {self.packet_size}")
        for name in ("has_density", "wants_density"):
            value = getattr(self, name)
            if not 0 < value <= 1:
                errors.append(f"{name} must be in (0, 1], got {value}")
        if not self.alpha > 0:
            errors.append(f"alpha must be positive, got {self.alpha}")
        if not 0 <= self.seed <= MAX_SEED:
            errors.append(f"seed must be an unsigned 64-bit integer, got {self.seed}")

        if errors:
            raise InvalidConfigError(f"Generator config validation failed: {'; '.join(errors)}")

    def with_overrides(self, **overrides: Any) -> "GenConfig":
        unknown = set(overrides) - {f.name for f in fields(self)}
        if unknown:
            raise InvalidConfigError(f"Unknown generator fields: {sorted(unknown)}")
        return replace(self, **overrides)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Any) -> "GenConfig":
        """JSON 설정에서 생성 (타입/필수 필드는 스키마로, 범위는 validate 로 검사)"""
        _check_schema(data)
        return cls(**data)


def generate_scenario(config: GenConfig) -> Scenario:
    """config.seed 로 결정되는 무작위 시나리오

    각 패킷은 wants_density 확률로 R(d_i) 에, 아니면 has_density 확률로 H(d_i) 에 들어간다.
    전송률과 데드라인은 구간 내 균등분포 실수.
    """
    config.validate()
    rng = np.random.default_rng(config.seed)

    destinations = []
    for _ in range(config.m):
        wants, has = set(), set()
        for packet in range(config.n):
            if rng.random() < config.wants_density:
                wants.add(PacketId(packet))
            elif rng.random() < config.has_density:
                has.add(PacketId(packet))
        max_rate = float(rng.uniform(config.rmin, config.rmax))
        deadlines = {packet: float(rng.uniform(config.tmin, config.tmax)) for packet in sorted(wants)}
        destinations.append(DestinationState(
            wants=frozenset(wants),
            has=frozenset(has),
            deadlines=deadlines,
            max_rate=max_rate
        ))

    return Scenario.create(
        packet_size=config.packet_size,
        destinations=destinations,
        benefits=[config.alpha] * config.n
    )
