"""
parapac - 困难性归约
把Hitting Set实例转换为 k-CNF 与 FVS 一致性实例，并提供穷举Hitting Set预言机
"""

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import FrozenSet, Optional, Tuple

from loguru import logger

from core.config import config
from core.exceptions import GuardError, InputError, SetTooSmallError
from core.formula import Clause, CnfFormula, Literal
from core.graph import Graph, GraphSampleSet, VertexSet
from core.params import ConceptKind
from core.sample import Assignment, LabeledSample, SampleSet
from .consistency.base import ConsistencyInstance


@dataclass(frozen=True)
class HittingSetInstance:
    """全集 {1..n}、集合族 F_1..F_m 与预算k"""
    universe_size: int
    family: Tuple[FrozenSet[int], ...]
    k: int

    def __post_init__(self):
        family = tuple(frozenset(s) for s in self.family)
        object.__setattr__(self, "family", family)
        if self.universe_size < 1:
            raise InputError(f"全集大小必须至少为1: {self.universe_size}")
        if self.k < 0:
            raise InputError(f"k必须非负: {self.k}")
        for i, members in enumerate(family, 1):
            if not members:
                raise InputError(f"第{i}个集合为空")
            bad = [v for v in members if not (1 <= v <= self.universe_size)]
            if bad:
                raise InputError(f"第{i}个集合的元素 {sorted(bad)} 超出 [1, {self.universe_size}]")

    def is_hitting_set(self, H) -> bool:
        H = set(H)
        return all(members & H for members in self.family)


def brute_force_hitting_set(inst: HittingSetInstance) -> Optional[FrozenSet[int]]:
    """按大小枚举，返回最小的命中集；不存在大小 ≤ k 的命中集时返回None"""
    n, k = inst.universe_size, min(inst.k, inst.universe_size)
    space = sum(comb(n, i) for i in range(k + 1))
    if space > config.brute_force_guard:
        raise GuardError(f"Hitting Set 枚举空间 {space} 超过上限 {config.brute_force_guard}")
    for size in range(k + 1):
        for H in combinations(range(1, n + 1), size):
            if inst.is_hitting_set(H):
                return frozenset(H)
    return None


def hitting_set_to_kcnf(inst: HittingSetInstance) -> ConsistencyInstance:
    """每个 F_i 的特征向量为正样本，全零向量为唯一负样本；相同集合产生的重复样本被去重

    k-CNF 要求 k ≤ n，预算截断到n；命中集大小本就不超过n，判定不变。
    """
    n, k = inst.universe_size, min(inst.k, inst.universe_size)
    samples = [LabeledSample(Assignment.from_true_set(n, members), 1) for members in inst.family]
    samples.append(LabeledSample(Assignment(tuple([0] * n)), 0))
    reduced = ConsistencyInstance(ConceptKind.KCNF, SampleSet(samples, n), k)
    logger.info(f"Hitting Set → k-CNF: n={n}, m={len(inst.family)} → t={len(reduced.samples)}, k={k}")
    return reduced


def hitting_set_clause(H, n: int) -> CnfFormula:
    """正向构造：命中集H的全正单子句CNF与归约实例一致"""
    return CnfFormula((Clause(frozenset(Literal(v, 1) for v in H)),), n)


def cycle_graph_on(n: int, members: FrozenSet[int]) -> Graph:
    """顶点 1..n 上按编号递增穿过members并闭合的简单环"""
    if len(members) < 3:
        raise SetTooSmallError(members)
    ordered = sorted(members)
    edges = list(zip(ordered, ordered[1:])) + [(ordered[-1], ordered[0])]
    return Graph.from_edges(n, edges)


def hitting_set_to_fvs(inst: HittingSetInstance) -> ConsistencyInstance:
    """每个 F_i 构成一个环图，标签全为1"""
    n = inst.universe_size
    graphs = [cycle_graph_on(n, members) for members in inst.family]
    reduced = ConsistencyInstance(ConceptKind.FVS, GraphSampleSet(graphs, [1] * len(graphs), n), inst.k)
    logger.info(f"Hitting Set → FVS: N={n}, m={len(inst.family)} → t={len(reduced.samples)}, k={inst.k}")
    return reduced


def extract_hitting_set(formula: CnfFormula, inst: HittingSetInstance) -> FrozenSet[int]:
    """从与归约实例一致的k-CNF中取出全正子句的变量

    公式在全零向量上为0，所以必有全正子句；它被每个正样本满足，故其变量命中每个集合。
    集合族为空时该子句可以是空子句，对应空命中集。
    """
    for clause in formula.parts:
        if all(lit.polarity == 1 for lit in clause.literals):
            H = frozenset(clause.variables())
            if inst.is_hitting_set(H):
                return H
    raise InputError("公式中没有变量构成命中集的全正子句")


def hitting_set_from_fvs(deletion_set: VertexSet, inst: HittingSetInstance) -> FrozenSet[int]:
    """FVS构造中删除集即命中集"""
    H = frozenset(deletion_set.vertices)
    if not inst.is_hitting_set(H):
        raise InputError(f"顶点集 {deletion_set} 不是命中集")
    return H
