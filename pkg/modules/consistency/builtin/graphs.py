"""
parapac - 图顶点删除一致性检查
H-删除集的有界搜索树，以及FVS的子集枚举
"""

from itertools import combinations
from typing import FrozenSet, Optional, Set

from loguru import logger

from core.exceptions import InputError
from core.graph import (ForbiddenFamily, GraphDeletionConcept, GraphSampleSet, VertexSet, find_induced_copy,
                        is_acyclic, is_h_free)
from core.params import ConceptKind
from ..base import BaseChecker, ConsistencyOutcome


def is_minimal_on_yes_graphs(S: FrozenSet[int], samples: GraphSampleSet, family: ForbiddenFamily) -> bool:
    """删去S中任一顶点都会在某个yes图中重新暴露禁止诱导子图"""
    yes = samples.yes_graphs
    return all(any(not is_h_free(g, family, S - {v}) for g in yes) for v in S)


def hdeletion_consistency(samples: GraphSampleSet, k: int, family: ForbiddenFamily) -> ConsistencyOutcome:
    """分支因子至多q的有界搜索树，返回分支顺序下首个被接受的极小删除集"""
    if k < 0:
        raise InputError(f"k必须非负: {k}")
    yes, no = samples.yes_graphs, samples.no_graphs
    visited: Set[FrozenSet[int]] = set()

    def first_copy(S: FrozenSet[int]):
        for g in yes:
            copy = find_induced_copy(g, family, S)
            if copy is not None:
                return copy
        return None

    def search(S: FrozenSet[int]) -> Optional[FrozenSet[int]]:
        if S in visited:
            return None
        visited.add(S)
        copy = first_copy(S)
        if copy is None:
            if not is_minimal_on_yes_graphs(S, samples, family):
                return None
            if all(not is_h_free(g, family, S) for g in no):
                return S
            return None
        if len(S) == k:
            return None
        for v in copy:
            found = search(S | {v})
            if found is not None:
                return found
        return None

    found = search(frozenset())
    logger.debug(f"{family.label()}-deletion 搜索访问 {len(visited)} 个节点 (N={samples.order}, k={k})")
    if found is None:
        return ConsistencyOutcome.inconsistent()
    return ConsistencyOutcome.consistent(GraphDeletionConcept(VertexSet(found, samples.order), family))


def fvs_consistency(samples: GraphSampleSet, k: int) -> ConsistencyOutcome:
    """按大小再按字典序枚举至多k个顶点的子集"""
    if k < 0:
        raise InputError(f"k必须非负: {k}")
    vertices = range(1, samples.order + 1)
    for size in range(min(k, samples.order) + 1):
        for S in combinations(vertices, size):
            if all(is_acyclic(g, S) == bool(label) for g, label in samples):
                return ConsistencyOutcome.consistent(GraphDeletionConcept(VertexSet(frozenset(S), samples.order)))
    return ConsistencyOutcome.inconsistent()


class HDeletionChecker(BaseChecker):
    """删除至多k个顶点后不含禁止诱导子图"""
    kind = ConceptKind.HDELETION
    description = "H-删除集，有界搜索树（FPT于 k）"

    def __init__(self, family: ForbiddenFamily, name: Optional[str] = None):
        super().__init__(name or f"hdeletion[{family.label()}]")
        self.family = family

    def check(self, samples: GraphSampleSet, k: int) -> ConsistencyOutcome:
        return hdeletion_consistency(samples, k, self.family)


class FvsChecker(BaseChecker):
    """删除至多k个顶点后无环"""
    kind = ConceptKind.FVS
    description = "反馈顶点集，子集枚举（XP）"

    def check(self, samples: GraphSampleSet, k: int) -> ConsistencyOutcome:
        return fvs_consistency(samples, k)
