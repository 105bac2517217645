"""
测试用随机实例生成器（均以numpy种子生成器驱动，可复现）
"""

from itertools import combinations, product
from typing import Iterator, List, Optional

import numpy as np

from core.graph import Graph, GraphSampleSet
from core.sample import Assignment, LabeledSample, SampleSet
from modules.reductions import HittingSetInstance


def random_assignment(rng: np.random.Generator, n: int) -> Assignment:
    return Assignment(tuple(int(b) for b in rng.integers(0, 2, n)))


def random_samples(rng: np.random.Generator, n: int, t: int) -> SampleSet:
    """至多t个两两不同的随机赋值，标签随机"""
    seen = {}
    for _ in range(t):
        seen.setdefault(random_assignment(rng, n), int(rng.integers(0, 2)))
    return SampleSet((LabeledSample(x, a) for x, a in seen.items()), n)


def random_backdoor_samples(rng: np.random.Generator, n: int, t: int, s: int, pivot: int = 1) -> SampleSet:
    """λ ≤ s 的样本集：S外每个样本至多一个pivot变量，每个S外变量至多被一个样本取pivot"""
    S = set(int(v) for v in rng.choice(np.arange(1, n + 1), size=min(s, n), replace=False))
    free = [v for v in range(1, n + 1) if v not in S]
    rng.shuffle(free)
    seen = {}
    for _ in range(t):
        bits = [1 - pivot] * n
        for v in S:
            bits[v - 1] = int(rng.integers(0, 2))
        if free and rng.random() < 0.7:
            bits[free.pop() - 1] = pivot
        seen.setdefault(Assignment(tuple(bits)), int(rng.integers(0, 2)))
    return SampleSet((LabeledSample(x, a) for x, a in seen.items()), n)


def all_sample_sets(n: int, max_t: int) -> Iterator[SampleSet]:
    """n位上所有至多max_t个不同赋值的带标签样本集"""
    assignments = [Assignment(bits) for bits in product((0, 1), repeat=n)]
    for t in range(max_t + 1):
        for chosen in combinations(assignments, t):
            for labels in product((0, 1), repeat=t):
                yield SampleSet((LabeledSample(x, a) for x, a in zip(chosen, labels)), n)


def random_graph(rng: np.random.Generator, order: int, p: float = 0.4) -> Graph:
    edges = [(u, v) for u, v in combinations(range(1, order + 1), 2) if rng.random() < p]
    return Graph.from_edges(order, edges)


def random_graph_samples(rng: np.random.Generator, order: int, t: int, p: float = 0.4) -> GraphSampleSet:
    seen = {}
    for _ in range(t):
        seen.setdefault(random_graph(rng, order, p), int(rng.integers(0, 2)))
    return GraphSampleSet(list(seen), list(seen.values()), order)


def random_hitting_set(rng: np.random.Generator, n: int, m: int, k: int, min_size: int = 1,
                       max_size: Optional[int] = None) -> HittingSetInstance:
    max_size = min(max_size or n, n)
    family: List[frozenset] = []
    for _ in range(m):
        size = int(rng.integers(min_size, max_size + 1))
        family.append(frozenset(int(v) for v in rng.choice(np.arange(1, n + 1), size=size, replace=False)))
    return HittingSetInstance(n, tuple(family), k)
