"""
parapac - 图类型
简单无向图、图样本集、禁止诱导子图族与顶点删除概念
"""

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .exceptions import InputError
from .sample import Assignment

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """顶点为 1..N 的简单无向图"""
    order: int
    edges: FrozenSet[Edge] = frozenset()

    def __post_init__(self):
        if self.order < 0:
            raise InputError(f"顶点数不能为负: {self.order}")
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise InputError(f"不允许自环: {u}")
            if not (1 <= u <= self.order and 1 <= v <= self.order):
                raise InputError(f"边 ({u}, {v}) 的端点超出 [1, {self.order}]")
            normalized.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(order, frozenset((int(u), int(v)) for u, v in edges))

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        """按节点排序重新编号为 1..N"""
        index = {node: i + 1 for i, node in enumerate(sorted(g.nodes))}
        return cls(g.number_of_nodes(), frozenset((index[u], index[v]) for u, v in g.edges))

    @classmethod
    def from_assignment(cls, x: Assignment) -> "Graph":
        """将宽度 N² 的赋值解释为邻接矩阵；(i,j) 或 (j,i) 任一位为1即有边"""
        order = math.isqrt(x.n)
        if order * order != x.n:
            raise InputError(f"赋值宽度 {x.n} 不是完全平方数，无法解释为邻接矩阵")
        edges = set()
        for i in range(1, order + 1):
            for j in range(i + 1, order + 1):
                if x.bits[(i - 1) * order + (j - 1)] or x.bits[(j - 1) * order + (i - 1)]:
                    edges.add((i, j))
        return cls(order, frozenset(edges))

    def to_assignment(self) -> Assignment:
        """对称邻接矩阵，n = N²"""
        bits = [0] * (self.order * self.order)
        for u, v in self.edges:
            bits[(u - 1) * self.order + (v - 1)] = 1
            bits[(v - 1) * self.order + (u - 1)] = 1
        return Assignment(tuple(bits))

    @cached_property
    def adjacency(self) -> Dict[int, FrozenSet[int]]:
        neighbours: Dict[int, set] = {v: set() for v in range(1, self.order + 1)}
        for u, v in self.edges:
            neighbours[u].add(v)
            neighbours[v].add(u)
        return {v: frozenset(ns) for v, ns in neighbours.items()}

    def to_networkx(self, removed: Iterable[int] = ()) -> nx.Graph:
        """networkx视图，可选地删除给定顶点"""
        removed = set(removed)
        g = nx.Graph()
        g.add_nodes_from(v for v in range(1, self.order + 1) if v not in removed)
        g.add_edges_from((u, v) for u, v in self.edges if u not in removed and v not in removed)
        return g

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency.get(u, ())


@dataclass(frozen=True)
class VertexSet:
    """N个顶点上的顶点子集S"""
    vertices: FrozenSet[int]
    N: int

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        bad = [v for v in self.vertices if not (1 <= v <= self.N)]
        if bad:
            raise InputError(f"顶点 {sorted(bad)} 超出 [1, {self.N}]")

    def sorted(self) -> List[int]:
        return sorted(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __str__(self) -> str:
        return "{" + ", ".join(str(v) for v in self.sorted()) + "}"


def _pattern_signature(graph: Graph) -> FrozenSet[Tuple[int, ...]]:
    """模式图在全部顶点排列下的邻接位向量（按顶点对字典序）"""
    pairs = list(combinations(range(graph.order), 2))
    signatures = set()
    for perm in permutations(range(1, graph.order + 1)):
        signatures.add(tuple(int(graph.has_edge(perm[a], perm[b])) for a, b in pairs))
    return frozenset(signatures)


NAMED_GRAPHS = {
    "K2": lambda: nx.complete_graph(2),
    "K3": lambda: nx.complete_graph(3),
    "P3": lambda: nx.path_graph(3),
    "P4": lambda: nx.path_graph(4),
    "C4": lambda: nx.cycle_graph(4),
    "2K2": lambda: nx.disjoint_union(nx.complete_graph(2), nx.complete_graph(2)),
    "claw": lambda: nx.star_graph(3),
}


@dataclass(frozen=True)
class ForbiddenFamily:
    """禁止诱导子图族 H_1..H_p；q 为成员最大阶数"""
    members: Tuple[Graph, ...]
    names: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.members:
            raise InputError("禁止子图族不能为空")
        if any(m.order < 1 for m in self.members):
            raise InputError("禁止子图至少要有1个顶点")

    @classmethod
    def named(cls, spec: str) -> "ForbiddenFamily":
        """由逗号分隔的名字构造，如 'K2' 或 'K2,P3'"""
        names = tuple(s.strip() for s in spec.split(",") if s.strip())
        unknown = [s for s in names if s not in NAMED_GRAPHS]
        if unknown or not names:
            raise InputError(f"未知的禁止子图: {unknown or spec!r}，可选 {sorted(NAMED_GRAPHS)}")
        return cls(tuple(Graph.from_networkx(NAMED_GRAPHS[s]()) for s in names), names)

    @property
    def p(self) -> int:
        return len(self.members)

    @property
    def q(self) -> int:
        return max(m.order for m in self.members)

    @cached_property
    def signatures(self) -> Tuple[FrozenSet[Tuple[int, ...]], ...]:
        return tuple(_pattern_signature(m) for m in self.members)

    def label(self) -> str:
        return ",".join(self.names) if self.names else f"custom[{self.p}]"


def find_induced_copy(graph: Graph, family: ForbiddenFamily,
                      removed: FrozenSet[int] = frozenset()) -> Optional[Tuple[int, ...]]:
    """在 G - removed 中暴力查找字典序最小的诱导拷贝，返回其顶点（升序）

    对每个成员 H_i 依次枚举 |V(H_i)| 元顶点组合，代价 O(p·N^q)。
    """
    alive = [v for v in range(1, graph.order + 1) if v not in removed]
    adjacency = graph.adjacency
    best = None
    for member, signature in zip(family.members, family.signatures):
        for combo in combinations(alive, member.order):
            if best is not None and combo >= best:
                break
            bits = tuple(int(b in adjacency[a]) for a, b in combinations(combo, 2))
            if bits in signature:
                best = combo
                break
    return best


def is_h_free(graph: Graph, family: ForbiddenFamily, removed: Iterable[int] = ()) -> bool:
    return find_induced_copy(graph, family, frozenset(removed)) is None


def is_acyclic(graph: Graph, removed: Iterable[int] = ()) -> bool:
    """森林判定：边数 = 顶点数 - 连通分量数"""
    g = graph.to_networkx(removed)
    return g.number_of_edges() == g.number_of_nodes() - nx.number_connected_components(g)


class GraphSampleSet:
    """同一顶点集上的图序列及其标签；图两两不同"""

    def __init__(self, graphs: Sequence[Graph], labels: Sequence[int], order: Optional[int] = None):
        if len(graphs) != len(labels):
            raise InputError("图与标签数量不一致")
        if order is None:
            if not graphs:
                raise InputError("空图样本集需要显式给出顶点数N")
            order = graphs[0].order
        self.order = order
        self.graphs: List[Graph] = []
        self.labels: List[int] = []
        seen: Dict[Graph, int] = {}
        for g, label in zip(graphs, labels):
            if g.order != order:
                raise InputError(f"图的顶点数 {g.order} 与样本集顶点数 {order} 不一致")
            if label not in (0, 1):
                raise InputError(f"标签只能是0或1: {label}")
            if g in seen:
                if seen[g] != label:
                    raise InputError("相同的图出现冲突标签")
                continue
            seen[g] = label
            self.graphs.append(g)
            self.labels.append(label)

    @classmethod
    def from_samples(cls, samples) -> "GraphSampleSet":
        """由邻接矩阵编码的布尔样本集转换"""
        order = math.isqrt(samples.n)
        if order * order != samples.n:
            raise InputError(f"样本宽度 {samples.n} 不是完全平方数")
        return cls([Graph.from_assignment(s.assignment) for s in samples], [s.label for s in samples], order)

    @property
    def yes_graphs(self) -> List[Graph]:
        return [g for g, label in zip(self.graphs, self.labels) if label == 1]

    @property
    def no_graphs(self) -> List[Graph]:
        return [g for g, label in zip(self.graphs, self.labels) if label == 0]

    def __len__(self) -> int:
        return len(self.graphs)

    def __iter__(self):
        return iter(zip(self.graphs, self.labels))

    def __repr__(self) -> str:
        return f"GraphSampleSet(N={self.order}, t={len(self)})"


@dataclass(frozen=True)
class GraphDeletionConcept:
    """顶点删除概念：family 为空表示FVS（删除后无环），否则删除后不含禁止诱导子图"""
    deletion_set: VertexSet
    family: Optional[ForbiddenFamily] = None

    @property
    def n(self) -> int:
        return self.deletion_set.N * self.deletion_set.N

    def accepts(self, graph: Graph) -> bool:
        removed = self.deletion_set.vertices
        if self.family is None:
            return is_acyclic(graph, removed)
        return is_h_free(graph, self.family, removed)

    def evaluate(self, x: Assignment) -> int:
        if x.n != self.n:
            raise InputError(f"概念宽度 {self.n} 与赋值宽度 {x.n} 不一致")
        return int(self.accepts(Graph.from_assignment(x)))

    def __str__(self) -> str:
        what = "FVS" if self.family is None else f"{self.family.label()}-deletion"
        return f"{what} S={self.deletion_set}"
