"""
Coding graph
데드라인과 전송률을 고려한 coding graph G(V, E)를 만들고 갱신합니다.
clique 하나가 곧 모든 구성원이 제시간에 복호할 수 있는 XOR 전송 하나에 대응합니다.
"""

from dataclasses import dataclass, replace
from itertools import combinations
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

import networkx as nx

from src.core.errors import InvalidScenarioError, PreconditionError
from src.core.models import DestId, PacketId, Request, Scenario, Transmission
from src.core.quantities import is_feasible, r_min, receives, tolerance, validate_scenario

GRAPH_DUMP_VERSION = "rsnc-graph/1"


class Vertex(Request):
    """v_{i,j}: 목적지 d_i 가 패킷 p_j 를 원함"""
    __slots__ = ()


@dataclass(frozen=True)
class CodingGraph:
    """Coding graph 값 객체

    scenario 는 그래프가 나타내는 시점의 작업 상태(남은 데드라인)이다.
    rate_aware=False 이면 vertex 의 전송률 도달 조건과 간선의 전송률 호환 조건을 무시한
    rate-agnostic 그래프(DSF 용)이다.
    """
    scenario: Scenario
    vertices: Tuple[Vertex, ...]
    adjacency: Dict[Vertex, FrozenSet[Vertex]]
    weights: Dict[Vertex, float]
    rate_aware: bool = True

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, vertex) -> bool:
        return vertex in self.adjacency

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def neighbors(self, vertex: Vertex) -> FrozenSet[Vertex]:
        return self.adjacency[vertex]

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return v in self.adjacency.get(u, frozenset())

    def edges(self) -> List[Tuple[Vertex, Vertex]]:
        """(u, v), u < v 형태의 정렬된 간선 목록"""
        return [(u, v) for u in self.vertices for v in sorted(self.adjacency[u]) if u < v]

    def is_clique(self, members: Iterable[Vertex]) -> bool:
        members = list(members)
        if any(v not in self for v in members):
            return False
        return all(self.has_edge(u, v) for u, v in combinations(members, 2))

    def induced(self, vertices: Iterable[Vertex]) -> "CodingGraph":
        """주어진 vertex 들로 제한한 부분 그래프"""
        keep = frozenset(v for v in vertices if v in self)
        return replace(
            self,
            vertices=tuple(v for v in self.vertices if v in keep),
            adjacency={v: self.adjacency[v] & keep for v in self.vertices if v in keep},
            weights={v: self.weights[v] for v in self.vertices if v in keep}
        )

    def with_weights(self, weights: Mapping[Vertex, float]) -> "CodingGraph":
        return replace(self, weights={v: float(weights[v]) for v in self.vertices})

    def to_dict(self) -> Dict[str, Any]:
        """디버깅/테스트용 인접 리스트 덤프 ('i:j' 키, (dest, packet) 순)"""
        return {
            "version": GRAPH_DUMP_VERSION,
            "rate_aware": self.rate_aware,
            "vertices": {
                v.key: {
                    "weight": self.weights[v],
                    "neighbors": [u.key for u in sorted(self.adjacency[v])]
                }
                for v in self.vertices
            }
        }

    def to_networkx(self) -> nx.Graph:
        """networkx 그래프로 변환 (vertex 속성 'weight')"""
        g = nx.Graph()
        for v in self.vertices:
            g.add_node(v, weight=self.weights[v])
        g.add_edges_from(self.edges())
        return g


def _sharing_allowed(scenario: Scenario, u: Request, v: Request) -> bool:
    """공유 조건: 서로 다른 목적지이고, 같은 패킷이거나 서로의 패킷을 side information 으로 가짐"""
    if u.dest == v.dest:
        return False
    if u.packet == v.packet:
        return True
    return (u.packet in scenario.destination(v.dest).has
            and v.packet in scenario.destination(u.dest).has)


def _rates_compatible(scenario: Scenario, u: Request, v: Request) -> bool:
    """전송률 호환 조건: 서로의 최대 전송률로도 상대의 데드라인을 지킬 수 있음"""
    eps = tolerance()
    return (r_min(scenario, u.dest, u.packet) <= scenario.max_rate(v.dest) + eps
            and r_min(scenario, v.dest, v.packet) <= scenario.max_rate(u.dest) + eps)


def _vertex_alive(scenario: Scenario, request: Request, rate_aware: bool) -> bool:
    if rate_aware:
        return is_feasible(scenario, request.dest, request.packet)
    return scenario.deadline(request.dest, request.packet) > tolerance()


def _adjacent(scenario: Scenario, u: Request, v: Request, rate_aware: bool) -> bool:
    if not _sharing_allowed(scenario, u, v):
        return False
    return not rate_aware or _rates_compatible(scenario, u, v)


def _assemble(
    scenario: Scenario,
    rate_aware: bool,
    weights: Optional[Callable[[Scenario, Vertex], float]]
) -> CodingGraph:
    vertices = tuple(
        Vertex(request.dest, request.packet)
        for request in scenario.requests()
        if _vertex_alive(scenario, request, rate_aware)
    )
    neighbors = {v: set() for v in vertices}
    for u, v in combinations(vertices, 2):
        if _adjacent(scenario, u, v, rate_aware):
            neighbors[u].add(v)
            neighbors[v].add(u)

    weigh = weights or benefit_weight
    return CodingGraph(
        scenario=scenario,
        vertices=vertices,
        adjacency={v: frozenset(n) for v, n in neighbors.items()},
        weights={v: float(weigh(scenario, v)) for v in vertices},
        rate_aware=rate_aware
    )


def benefit_weight(scenario: Scenario, vertex: Vertex) -> float:
    """기본 vertex 가중치: 패킷의 benefit alpha_j"""
    return scenario.benefit(vertex.packet)


def _require_valid(scenario: Scenario) -> None:
    report = validate_scenario(scenario)
    if not report.is_valid:
        raise InvalidScenarioError(report)


def build_graph(scenario: Scenario, validate: bool = True) -> CodingGraph:
    """도달 가능한 요청을 vertex 로, 공유·전송률 호환 조건을 간선으로 하는 coding graph 생성, 가중치는 alpha

    validate=False 는 데드라인이 이미 줄어든 작업 상태에서 다시 만들 때 사용한다.
    """
    if validate:
        _require_valid(scenario)
    return _assemble(scenario, rate_aware=True, weights=None)


def build_rate_agnostic_graph(
    scenario: Scenario,
    weights: Optional[Callable[[Scenario, Vertex], float]] = None,
    validate: bool = True
) -> CodingGraph:
    """전송률을 고려하지 않는 기존 그래프: vertex 는 p_j ∈ R(d_i), 간선은 공유 조건만"""
    if validate:
        _require_valid(scenario)
    return _assemble(scenario, rate_aware=False, weights=weights)


def clique_to_transmission(
    graph: CodingGraph,
    clique: Iterable[Vertex],
    scenario: Optional[Scenario] = None
) -> Transmission:
    """clique 를 전송으로 변환: P' = 패킷들, D' = 목적지들, r = min r(s, d_i)"""
    scenario = scenario or graph.scenario
    members = sorted(set(clique))
    if not members:
        raise PreconditionError("Cannot transmit an empty clique")
    if not graph.is_clique(members):
        raise PreconditionError(f"Vertices {[v.key for v in members]} do not form a clique")

    return Transmission(
        coded_set=frozenset(PacketId(v.packet) for v in members),
        rate=min(scenario.max_rate(v.dest) for v in members),
        intended=frozenset(DestId(v.dest) for v in members),
        packet_size=scenario.packet_size
    )


def decodes(scenario: Scenario, dest: int, transmission: Transmission) -> Optional[PacketId]:
    """d 가 이 전송에서 복호할 수 있는 wanted 패킷 (없으면 None)

    수신에 성공하고, p_j ∈ P' ∩ R(d) 이며 P' \\ {p_j} ⊆ H(d) 인 p_j 중 가장 작은 id.
    """
    if not receives(scenario, dest, transmission.rate):
        return None

    destination = scenario.destination(dest)
    for packet in sorted(transmission.coded_set & destination.wants):
        if transmission.coded_set - {packet} <= destination.has:
            return packet
    return None


def update_graph(
    graph: CodingGraph,
    scenario: Scenario,
    elapsed: float,
    served: Iterable[Request] = (),
    doomed: Iterable[Request] = ()
) -> CodingGraph:
    """한 번의 전송 이후 그래프 갱신

    데드라인을 elapsed 만큼 줄이고, served/doomed 와 더 이상 제시간 도달이 불가능한
    vertex 를 제거한 뒤, 남은 간선의 전송률 호환 조건을 새 데드라인으로 다시 검사한다.
    """
    if elapsed < 0:
        raise PreconditionError(f"elapsed must be nonnegative, got {elapsed}")

    updated = scenario.elapse(elapsed)
    removed = set(served) | set(doomed)
    survivors = [
        v for v in graph.vertices
        if v not in removed and _vertex_alive(updated, v, graph.rate_aware)
    ]
    alive = frozenset(survivors)

    adjacency = {}
    for v in survivors:
        # 공유 조건은 시간에 따라 변하지 않으므로 기존 간선만 다시 본다
        kept = (u for u in graph.adjacency[v] & alive)
        if graph.rate_aware:
            kept = (u for u in kept if _rates_compatible(updated, u, v))
        adjacency[v] = frozenset(kept)

    return CodingGraph(
        scenario=updated,
        vertices=tuple(survivors),
        adjacency=adjacency,
        weights={v: graph.weights[v] for v in survivors},
        rate_aware=graph.rate_aware
    )
