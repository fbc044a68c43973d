"""
Oracle (전수 탐색) 테스트
"""

import pytest

from src.coding.clique import CliqueResult
from src.coding.graph import Vertex, build_graph, decodes
from src.core.errors import InvalidConfigError, OracleLimitExceeded
from src.scheduling.baselines import run_dsf, run_sin1
from src.scheduling.ledger import replay_schedule
from src.scheduling.oracle import (
    OracleLimits,
    brute_force_u_max,
    exhaustive_min_misses,
    integer_program_min_misses,
    optimal_schedule,
)
from src.scheduling.rsnc import plan_one_propagation, run_rsnc
from tests.sample_scenarios import all_infeasible_example, infeasible_example, single_request_example


class TestOptimalSchedule:
    def test_two_rate_example(self, two_rate):
        result = optimal_schedule(two_rate)
        assert result.min_misses == 0
        assert [t.describe() for t in result.best_log.transmissions] == ["p0 @ 5000", "p1⊕p2 @ 2000"]
        assert result.best_log.algorithm == "oracle"
        assert result.schedules_explored > 0

    def test_infeasible_request_always_missed(self):
        assert optimal_schedule(infeasible_example()).min_misses == 1

    def test_all_infeasible(self):
        scenario = all_infeasible_example()
        result = optimal_schedule(scenario)
        assert result.min_misses == scenario.total_requests
        assert result.best_log.transmissions == ()

    def test_limit_refusal(self, random_scenarios):
        scenario = next(s for s in random_scenarios("small", count=50) if len(build_graph(s)) > 3)
        with pytest.raises(OracleLimitExceeded):
            optimal_schedule(scenario, OracleLimits(max_vertices=3))

    def test_invalid_limits(self):
        with pytest.raises(InvalidConfigError):
            OracleLimits(max_vertices=0)

    def test_schedule_is_replayable(self, random_scenarios):
        for scenario in random_scenarios("tiny", count=30):
            if len(build_graph(scenario)) > 8:
                continue
            result = optimal_schedule(scenario)
            assert replay_schedule(scenario, result.best_log.transmissions, "oracle") == result.best_log
            assert result.min_misses == result.best_log.misses


class TestIndependentOptima:
    def test_pure_enumeration_agrees(self, random_scenarios):
        for scenario in random_scenarios("tiny", count=40):
            if len(build_graph(scenario)) > 6:
                continue
            assert exhaustive_min_misses(scenario) == optimal_schedule(scenario).min_misses

    def test_integer_program_agrees(self, random_scenarios):
        for scenario in random_scenarios("tiny", count=40, start=1000):
            if len(build_graph(scenario)) > 6:
                continue
            assert integer_program_min_misses(scenario) == optimal_schedule(scenario).min_misses

    def test_two_rate_integer_program(self, two_rate):
        assert integer_program_min_misses(two_rate) == 0
        assert exhaustive_min_misses(two_rate) == 0


class TestBruteForceU:
    def test_two_rate_fresh_graph(self, two_rate, two_rate_graph):
        clique, k, u_value = brute_force_u_max(two_rate, two_rate_graph)
        assert u_value == pytest.approx(1.0)
        assert clique.members == {Vertex(0, 0)}
        assert k == 2

    def test_single_vertex(self):
        scenario = single_request_example()
        clique, k, u_value = brute_force_u_max(scenario, build_graph(scenario))
        assert clique.vertices == (Vertex(0, 0),)
        assert (k, u_value) == (1, 1.0)

    def test_empty_graph_sentinel(self):
        scenario = all_infeasible_example()
        assert brute_force_u_max(scenario, build_graph(scenario)) == (CliqueResult.empty(), None, 0.0)

    def test_algorithm_one_never_exceeds_optimum(self, random_scenarios):
        for scenario in random_scenarios("tiny", count=40):
            graph = build_graph(scenario)
            if graph.is_empty or len(graph) > 8:
                continue
            _, _, u_star = brute_force_u_max(scenario, graph)
            assert plan_one_propagation(scenario, graph).u_value <= u_star + 1e-9


def test_oracle_dominates_heuristics(random_scenarios):
    for scenario in random_scenarios("tiny", count=60, start=500):
        if len(build_graph(scenario)) > 8:
            continue
        best = optimal_schedule(scenario).min_misses
        assert best <= run_rsnc(scenario).misses
        assert best <= run_dsf(scenario).misses
        assert best <= run_sin1(scenario).misses


def test_oracle_transmissions_are_decodable_cliques(random_scenarios):
    for scenario in random_scenarios("tiny", count=20, start=200):
        if len(build_graph(scenario)) > 8:
            continue
        log = optimal_schedule(scenario).best_log
        current = scenario
        for transmission in log.transmissions:
            # 각 전송의 의도된 수신자는 모두 자신이 원하는 패킷을 복호한다
            for dest in transmission.intended:
                assert decodes(current, dest, transmission) is not None
            current = current.elapse(transmission.delay)
