"""
도메인 모델, 기본 물리량, 시나리오 검증, 설정 테스트
"""

import math
from dataclasses import replace

import pytest

from config.settings import Settings
from src.core.errors import DomainError, InvalidScenarioError, RSNCError
from src.core.models import DestinationState, RequestOutcome, Scenario, Transmission
from src.core.quantities import is_feasible, r_min, receives, validate_scenario
from src.utils.logger import get_logger
from tests.sample_scenarios import two_rate_example


class TestRMin:
    def test_two_rate_values(self, two_rate):
        assert r_min(two_rate, 0, 0) == pytest.approx(2_500.0)
        assert r_min(two_rate, 1, 1) == pytest.approx(1_250.0)

    def test_unwanted_packet_is_domain_error(self, two_rate):
        with pytest.raises(DomainError):
            r_min(two_rate, 0, 1)

    def test_expired_deadline_is_infinite(self, two_rate):
        assert r_min(two_rate.elapse(4.0), 0, 0) == math.inf
        assert not is_feasible(two_rate.elapse(4.0), 0, 0)

    def test_feasibility_against_max_rate(self, two_rate):
        # 2 초가 지나면 d0 는 2 초 안에 10k bits 를 받아야 하므로 5k/s 가 필요
        assert is_feasible(two_rate.elapse(2.0), 0, 0)
        assert not is_feasible(two_rate.elapse(2.5), 0, 0)


class TestReceives:
    def test_rate_at_threshold_is_received(self, two_rate):
        assert receives(two_rate, 1, 2_000.0)

    def test_rate_above_threshold_fails(self, two_rate):
        assert not receives(two_rate, 1, 5_000.0)

    def test_tiny_rate_always_received(self, two_rate):
        assert all(receives(two_rate, d, 1e-6) for d in range(3))


class TestValidation:
    def test_two_rate_example_is_valid(self, two_rate):
        report = validate_scenario(two_rate)
        assert report.is_valid
        assert len(report) == 0
        assert report.summary() == "valid"

    def test_has_wants_overlap(self, two_rate):
        broken = replace(two_rate.destinations[0], has=frozenset({0, 1, 2}))
        scenario = replace(two_rate, destinations=(broken,) + two_rate.destinations[1:])
        report = validate_scenario(scenario)
        assert "has_wants_overlap" in report.codes
        assert "has∩wants nonempty" in report.summary()

    def test_nonpositive_values_are_all_reported(self):
        scenario = Scenario.create(
            packet_size=0,
            destinations=[DestinationState(wants=frozenset({0}), has=frozenset(), deadlines={0: -1.0}, max_rate=0.0)],
            benefits=[0.0]
        )
        codes = validate_scenario(scenario).codes
        for code in ("nonpositive_packet_size", "nonpositive_benefit", "nonpositive_deadline", "nonpositive_max_rate"):
            assert code in codes

    def test_structural_mismatches(self):
        scenario = Scenario(
            packet_size=10.0,
            n_packets=2,
            destinations=(DestinationState(wants=frozenset({0, 5}), has=frozenset(), deadlines={0: 1.0},
                                           max_rate=1.0),),
            benefits=(1.0,)
        )
        codes = validate_scenario(scenario).codes
        assert "benefits_length" in codes
        assert "unknown_packet" in codes
        assert "deadline_keys_mismatch" in codes

    def test_invalid_scenario_error_carries_report(self):
        report = validate_scenario(Scenario.create(packet_size=-1, destinations=[]))
        error = InvalidScenarioError(report)
        assert error.report is report
        assert isinstance(error, RSNCError) and isinstance(error, ValueError)


class TestScenario:
    def test_requests_are_sorted(self, two_rate):
        assert [r.key for r in two_rate.requests()] == ["0:0", "1:1", "2:2"]
        assert two_rate.total_requests == 3

    def test_default_benefits(self, two_rate):
        assert two_rate.benefits == (1.0, 1.0, 1.0)
        assert two_rate.n_packets == 3

    def test_elapse_decrements_every_deadline(self, two_rate):
        later = two_rate.elapse(2.0)
        assert [later.deadline(i, i) for i in range(3)] == [2.0, 6.0, 6.0]
        # 원본은 그대로
        assert two_rate.deadline(0, 0) == 4.0

    def test_elapse_zero_is_identity(self, two_rate):
        assert two_rate.elapse(0) is two_rate

    def test_dict_round_trip(self, two_rate):
        assert Scenario.from_dict(two_rate.to_dict()) == two_rate


class TestTransmission:
    def test_delay_is_derived(self):
        transmission = Transmission(frozenset({1, 2}), 2_000.0, frozenset({1, 2}), 10_000.0)
        assert transmission.delay == pytest.approx(5.0)
        assert transmission.describe() == "p1⊕p2 @ 2000"

    def test_empty_coded_set_rejected(self):
        with pytest.raises(ValueError):
            Transmission(frozenset(), 1.0, frozenset(), 1.0)

    def test_nonpositive_rate_rejected(self):
        with pytest.raises(ValueError):
            Transmission(frozenset({0}), 0.0, frozenset(), 1.0)


class TestRequestOutcome:
    def test_on_time_at_exact_deadline(self):
        assert not RequestOutcome(dest=0, packet=0, deadline=4.0, delivered_at=4.0).missed

    def test_late_or_undelivered_is_missed(self):
        assert RequestOutcome(dest=0, packet=0, deadline=4.0, delivered_at=5.0).missed
        assert RequestOutcome(dest=0, packet=0, deadline=4.0).missed


class TestSettings:
    def test_defaults_validate(self):
        assert Settings().validate()

    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv("RSNC_ORACLE_MAX_VERTICES", "6")
        monkeypatch.setenv("RSNC_SWEEP_TIMING", "true")
        fresh = Settings()
        assert fresh.oracle.max_vertices == 6
        assert fresh.sweep.timing is True

    def test_invalid_values_raise(self, monkeypatch):
        monkeypatch.setenv("RSNC_WANTS_DENSITY", "1.5")
        with pytest.raises(ValueError, match="Configuration validation failed"):
            Settings().validate()


def test_two_rate_example_matches_sample_module():
    assert two_rate_example() == two_rate_example()


class TestLogger:
    def test_named_logger_is_under_root(self):
        assert get_logger("scheduler").name == "rsnc.scheduler"

    def test_name_is_required(self):
        with pytest.raises(TypeError):
            get_logger()
