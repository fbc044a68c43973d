"""
최대 가중치 clique 탐색 테스트
"""

import networkx as nx
import numpy as np
import pytest

from src.coding.clique import CliqueResult, enumerate_cliques, max_weight_clique
from src.coding.graph import CodingGraph, Vertex
from src.core.errors import CliqueEnumerationCapExceeded

V00, V11, V22 = Vertex(0, 0), Vertex(1, 1), Vertex(2, 2)


def random_weighted_graph(rng: np.random.Generator, size: int, density: float, integer: bool = False) -> CodingGraph:
    """scenario 없이 구조만 가진 무작위 그래프"""
    vertices = tuple(Vertex(i, 0) for i in range(size))
    neighbors = {v: set() for v in vertices}
    for a in range(size):
        for b in range(a + 1, size):
            if rng.random() < density:
                neighbors[vertices[a]].add(vertices[b])
                neighbors[vertices[b]].add(vertices[a])
    if integer:
        weights = {v: float(rng.integers(1, 10)) for v in vertices}
    else:
        weights = {v: float(rng.uniform(0.1, 5.0)) for v in vertices}
    return CodingGraph(
        scenario=None,
        vertices=vertices,
        adjacency={v: frozenset(n) for v, n in neighbors.items()},
        weights=weights
    )


def brute_force_best(graph: CodingGraph):
    cliques = enumerate_cliques(graph, cap=len(graph))
    return max(sum(graph.weights[v] for v in c) for c in cliques)


class TestTwoRateGraph:
    def test_low_threshold_picks_the_pair(self, two_rate, two_rate_graph):
        result = max_weight_clique(two_rate_graph, lambda v: two_rate.max_rate(v.dest) >= 2_000)
        assert result.members == frozenset({V11, V22})
        assert result.weight == pytest.approx(2.0)

    def test_high_threshold_picks_d0(self, two_rate, two_rate_graph):
        result = max_weight_clique(two_rate_graph, lambda v: two_rate.max_rate(v.dest) >= 5_000)
        assert result.vertices == (V00,)
        assert result.weight == pytest.approx(1.0)

    def test_empty_filter_gives_empty_clique(self, two_rate_graph):
        result = max_weight_clique(two_rate_graph, lambda v: False)
        assert result == CliqueResult.empty()
        assert result.is_empty and len(result) == 0


class TestTieBreaking:
    def test_larger_clique_preferred_on_equal_weight(self):
        graph = CodingGraph(
            scenario=None,
            vertices=(V00, V11, V22),
            adjacency={V00: frozenset(), V11: frozenset({V22}), V22: frozenset({V11})},
            weights={V00: 2.0, V11: 1.0, V22: 1.0}
        )
        assert max_weight_clique(graph).members == frozenset({V11, V22})

    def test_lexicographic_order_on_full_tie(self):
        graph = CodingGraph(
            scenario=None,
            vertices=(V00, V11, V22),
            adjacency={v: frozenset() for v in (V00, V11, V22)},
            weights={V00: 1.0, V11: 1.0, V22: 1.0}
        )
        assert max_weight_clique(graph).vertices == (V00,)

    def test_deterministic_across_calls(self):
        graph = random_weighted_graph(np.random.default_rng(3), 12, 0.5)
        assert max_weight_clique(graph) == max_weight_clique(graph)


class TestEnumeration:
    def test_two_rate_cliques(self, two_rate_graph):
        assert enumerate_cliques(two_rate_graph) == [(V00,), (V11,), (V22,), (V11, V22)]

    def test_cap_refusal(self):
        graph = random_weighted_graph(np.random.default_rng(0), 6, 0.5)
        with pytest.raises(CliqueEnumerationCapExceeded):
            enumerate_cliques(graph, cap=5)

    def test_complete_graph_count(self):
        graph = random_weighted_graph(np.random.default_rng(0), 5, 1.0)
        assert len(enumerate_cliques(graph)) == 2 ** 5 - 1


def test_matches_exhaustive_enumeration():
    rng = np.random.default_rng(2012)
    for _ in range(200):
        graph = random_weighted_graph(rng, int(rng.integers(1, 13)), float(rng.uniform(0.1, 0.9)))
        result = max_weight_clique(graph)
        assert graph.is_clique(result.members)
        assert result.weight == pytest.approx(brute_force_best(graph), abs=1e-9)


def test_matches_networkx_on_integer_weights():
    rng = np.random.default_rng(99)
    for _ in range(100):
        graph = random_weighted_graph(rng, int(rng.integers(1, 15)), float(rng.uniform(0.2, 0.8)), integer=True)
        g = graph.to_networkx()
        # networkx 는 정수 가중치만 받는다
        nx.set_node_attributes(g, {v: int(w) for v, w in graph.weights.items()}, "weight")
        _, expected = nx.max_weight_clique(g, weight="weight")
        assert max_weight_clique(graph).weight == pytest.approx(expected)



def test_adding_a_vertex_never_lowers_the_optimum():
    rng = np.random.default_rng(41)
    for _ in range(200):
        graph = random_weighted_graph(rng, int(rng.integers(2, 13)), float(rng.uniform(0.1, 0.9)))
        dropped = graph.vertices[int(rng.integers(len(graph)))]
        smaller = graph.induced(v for v in graph.vertices if v != dropped)
        assert max_weight_clique(smaller).weight <= max_weight_clique(graph).weight + 1e-9


def test_filtered_search_stays_inside_the_filter():
    rng = np.random.default_rng(17)
    for _ in range(200):
        graph = random_weighted_graph(rng, int(rng.integers(1, 13)), float(rng.uniform(0.1, 0.9)))
        allowed = frozenset(v for v in graph.vertices if rng.random() < 0.6)
        result = max_weight_clique(graph, lambda v: v in allowed)

        assert result.members <= allowed
        assert graph.is_clique(result.members)
        expected = brute_force_best(graph.induced(allowed)) if allowed else 0.0
        assert result.weight == pytest.approx(expected, abs=1e-9)

@pytest.mark.slow
def test_exhaustive_agreement_up_to_fifteen_vertices():
    rng = np.random.default_rng(500)
    for _ in range(500):
        graph = random_weighted_graph(rng, int(rng.integers(1, 16)), float(rng.uniform(0.1, 0.9)))
        assert max_weight_clique(graph).weight == pytest.approx(brute_force_best(graph), abs=1e-9)
