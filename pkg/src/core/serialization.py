"""
JSON 직렬화
시나리오("rsnc-scenario/1")와 전송 기록("rsnc-log/1") 문서를 읽고 씁니다.
읽을 때는 항상 jsonschema 로 구조를 먼저 검증합니다.
"""

import json
from pathlib import Path
from typing import Any, Dict, Union

import jsonschema

from src.core.errors import DocumentFormatError
from src.core.models import RequestOutcome, Scenario, Transmission, TransmissionLog

SCENARIO_VERSION = "rsnc-scenario/1"
LOG_VERSION = "rsnc-log/1"
ALGORITHM_TAGS = ("rsnc", "dsf", "sin1", "oracle", "replay")

_ID_ARRAY = {"type": "array", "items": {"type": "integer", "minimum": 0}, "uniqueItems": True}

SCENARIO_SCHEMA: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["version", "packet_size", "benefits", "destinations"],
    "properties": {
        "version": {"const": SCENARIO_VERSION},
        "packet_size": {"type": "number"},
        "benefits": {"type": "array", "items": {"type": "number"}},
        "destinations": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["wants", "has", "deadlines", "max_rate"],
                "properties": {
                    "wants": _ID_ARRAY,
                    "has": _ID_ARRAY,
                    "deadlines": {
                        "type": "object",
                        "patternProperties": {"^[0-9]+$": {"type": "number"}},
                        "additionalProperties": False
                    },
                    "max_rate": {"type": "number"}
                },
                "additionalProperties": False
            }
        }
    },
    "additionalProperties": False
}

LOG_SCHEMA: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["version", "algorithm", "transmissions", "outcomes"],
    "properties": {
        "version": {"const": LOG_VERSION},
        "algorithm": {"enum": list(ALGORITHM_TAGS)},
        "transmissions": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["coded_set", "rate", "delay", "intended"],
                "properties": {
                    "coded_set": {**_ID_ARRAY, "minItems": 1},
                    "rate": {"type": "number", "exclusiveMinimum": 0},
                    "delay": {"type": "number", "exclusiveMinimum": 0},
                    "intended": _ID_ARRAY
                }
            }
        },
        "outcomes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["dest", "packet", "delivered_at", "missed"],
                "properties": {
                    "dest": {"type": "integer", "minimum": 0},
                    "packet": {"type": "integer", "minimum": 0},
                    "delivered_at": {"type": ["number", "null"]},
                    "missed": {"type": "boolean"}
                }
            }
        }
    }
}


def validate_document(document: Any, schema: Dict[str, Any], kind: str) -> None:
    """jsonschema 검증, 실패 시 DocumentFormatError"""
    try:
        jsonschema.validate(instance=document, schema=schema)
    except jsonschema.ValidationError as e:
        path = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise DocumentFormatError(f"Invalid {kind} document at {path}: {e.message}") from e


def scenario_to_document(scenario: Scenario) -> Dict[str, Any]:
    """시나리오를 버전 태그가 붙은 JSON 문서로 변환"""
    return {"version": SCENARIO_VERSION, **scenario.to_dict()}


def scenario_from_document(document: Dict[str, Any]) -> Scenario:
    """JSON 문서에서 시나리오 생성 (스키마 검증 포함, 불변식 검증은 하지 않음)"""
    validate_document(document, SCENARIO_SCHEMA, "scenario")
    return Scenario.from_dict(document)


def log_to_document(log: TransmissionLog) -> Dict[str, Any]:
    """전송 기록을 버전 태그가 붙은 JSON 문서로 변환"""
    return {"version": LOG_VERSION, **log.to_dict()}


def log_from_document(document: Dict[str, Any], scenario: Scenario) -> TransmissionLog:
    """JSON 문서에서 전송 기록 복원. 원본 데드라인은 scenario 에서 가져온다"""
    validate_document(document, LOG_SCHEMA, "log")

    transmissions = tuple(
        Transmission.from_dict(item, scenario.packet_size) for item in document["transmissions"]
    )
    outcomes = []
    for item in document["outcomes"]:
        dest, packet = item["dest"], item["packet"]
        if dest >= scenario.n_destinations or packet not in scenario.destination(dest).wants:
            raise DocumentFormatError(f"Log outcome ({dest}, {packet}) is not a request of the scenario")
        outcome = RequestOutcome(
            dest=dest,
            packet=packet,
            deadline=scenario.deadline(dest, packet),
            delivered_at=item["delivered_at"]
        )
        if outcome.missed != item["missed"]:
            raise DocumentFormatError(f"Log outcome ({dest}, {packet}) has inconsistent 'missed' flag")
        outcomes.append(outcome)

    return TransmissionLog(algorithm=document["algorithm"], transmissions=transmissions, outcomes=tuple(outcomes))


def _read_json(path: Union[str, Path]) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise DocumentFormatError(f"{path} is not valid JSON: {e}") from e


def _write_json(document: Any, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(document, f, indent=2, ensure_ascii=False)
        f.write("\n")


def load_scenario(path: Union[str, Path]) -> Scenario:
    return scenario_from_document(_read_json(path))


def save_scenario(scenario: Scenario, path: Union[str, Path]) -> None:
    _write_json(scenario_to_document(scenario), path)


def load_log(path: Union[str, Path], scenario: Scenario) -> TransmissionLog:
    return log_from_document(_read_json(path), scenario)


def save_log(log: TransmissionLog, path: Union[str, Path]) -> None:
    _write_json(log_to_document(log), path)


def read_json(path: Union[str, Path]) -> Any:
    """설정 파일 등 임의 JSON 읽기 (형식 오류는 DocumentFormatError)"""
    return _read_json(path)
