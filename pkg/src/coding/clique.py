"""
최대 가중치 clique 탐색
RSNC 계획기, DSF, oracle 이 공통으로 사용하는 정확한 branch-and-bound 탐색과
소규모 그래프용 전체 clique 열거를 제공합니다.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from config.settings import settings
from src.coding.graph import CodingGraph, Vertex
from src.core.errors import CliqueEnumerationCapExceeded
from src.core.quantities import tolerance

VertexFilter = Callable[[Vertex], bool]


@dataclass(frozen=True)
class CliqueResult:
    """탐색 결과 clique 와 총 가중치"""
    members: frozenset
    weight: float

    @classmethod
    def empty(cls) -> "CliqueResult":
        return cls(members=frozenset(), weight=0.0)

    @property
    def is_empty(self) -> bool:
        return not self.members

    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        return tuple(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)


def degeneracy_order(graph: CodingGraph, candidates: Sequence[Vertex]) -> List[Vertex]:
    """최소 차수 vertex 를 반복 제거하는 순서 (동률은 (dest, packet) 순)"""
    remaining = set(candidates)
    degree = {v: len(graph.adjacency[v] & remaining) for v in candidates}
    order = []
    while remaining:
        v = min(remaining, key=lambda u: (degree[u], u))
        order.append(v)
        remaining.discard(v)
        for u in graph.adjacency[v] & remaining:
            degree[u] -= 1
    return order


class MaxWeightClique:
    """정렬된 후보 목록 위의 branch-and-bound

    동일 가중치(허용 오차 이내)에서는 더 큰 clique, 그 다음에는 정렬된
    (dest, packet) 열이 사전순으로 작은 clique 를 택한다.
    """

    def __init__(self, graph: CodingGraph, candidates: Sequence[Vertex]):
        self.graph = graph
        self.order = degeneracy_order(graph, candidates)
        self.node_weights: Dict[Vertex, float] = {v: graph.weights[v] for v in self.order}
        self.incumbent_nodes: Tuple[Vertex, ...] = ()
        self.incumbent_weight = 0.0
        self.eps = tolerance()

    def update_incumbent_if_improved(self, clique: List[Vertex], weight: float) -> None:
        if not clique:
            return
        if weight > self.incumbent_weight + self.eps:
            better = True
        elif weight < self.incumbent_weight - self.eps:
            better = False
        elif len(clique) != len(self.incumbent_nodes):
            better = len(clique) > len(self.incumbent_nodes)
        else:
            better = tuple(sorted(clique)) < self.incumbent_nodes
        if better:
            self.incumbent_nodes = tuple(sorted(clique))
            self.incumbent_weight = weight

    def _cannot_improve(self, bound_weight: float, bound_size: int) -> bool:
        if bound_weight < self.incumbent_weight - self.eps:
            return True
        if bound_weight <= self.incumbent_weight + self.eps:
            return bound_size < len(self.incumbent_nodes)
        return False

    def expand(self, clique: List[Vertex], clique_weight: float, candidates: List[Vertex]) -> None:
        self.update_incumbent_if_improved(clique, clique_weight)

        # suffix[i] = candidates[i:] 의 가중치 합 (상한)
        suffix = [0.0] * (len(candidates) + 1)
        for i in range(len(candidates) - 1, -1, -1):
            suffix[i] = suffix[i + 1] + self.node_weights[candidates[i]]

        for i, v in enumerate(candidates):
            if self._cannot_improve(clique_weight + suffix[i], len(clique) + len(candidates) - i):
                return
            neighbors = self.graph.adjacency[v]
            clique.append(v)
            self.expand(clique, clique_weight + self.node_weights[v],
                        [u for u in candidates[i + 1:] if u in neighbors])
            clique.pop()

    def find_max_weight_clique(self) -> CliqueResult:
        self.expand([], 0.0, list(self.order))
        members = frozenset(self.incumbent_nodes)
        return CliqueResult(members=members, weight=sum(self.node_weights[v] for v in self.incumbent_nodes))


def max_weight_clique(graph: CodingGraph, vertex_filter: Optional[VertexFilter] = None) -> CliqueResult:
    """vertex_filter 를 통과한 vertex 로 유도된 부분 그래프의 최대 가중치 clique

    후보가 없으면 가중치 0 의 빈 clique 를 반환한다.
    """
    candidates = [v for v in graph.vertices if vertex_filter is None or vertex_filter(v)]
    if not candidates:
        return CliqueResult.empty()
    return MaxWeightClique(graph, candidates).find_max_weight_clique()


def enumerate_cliques(graph: CodingGraph, cap: Optional[int] = None) -> List[Tuple[Vertex, ...]]:
    """비어 있지 않은 모든 clique 를 (크기, 사전순) 으로 한 번씩 나열"""
    cap = settings.scheduler.clique_enumeration_cap if cap is None else cap
    if len(graph) > cap:
        raise CliqueEnumerationCapExceeded(len(graph), cap)

    cliques: List[Tuple[Vertex, ...]] = []

    def extend(clique: Tuple[Vertex, ...], candidates: List[Vertex]) -> None:
        for i, v in enumerate(candidates):
            grown = clique + (v,)
            cliques.append(grown)
            extend(grown, [u for u in candidates[i + 1:] if u in graph.adjacency[v]])

    extend((), list(graph.vertices))
    cliques.sort(key=lambda c: (len(c), c))
    return cliques
