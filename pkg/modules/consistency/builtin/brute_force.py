"""
parapac - 穷举一致性预言机
在极小的 n、k 上枚举整个假设空间，作为各检查器的测试基准
"""

from functools import lru_cache, reduce
from itertools import chain, combinations, product
from math import comb
from typing import Callable, Iterator, List, Sequence, Tuple

import numpy as np
from loguru import logger

from core.config import config
from core.exceptions import GuardError, InputError
from core.formula import Clause, CnfFormula, DnfFormula, Literal, Term
from core.graph import GraphDeletionConcept, GraphSampleSet, VertexSet
from core.params import ConceptKind
from core.sample import Assignment, SampleSet
from .kcnf import short_clauses
from ..base import ConsistencyInstance, ConsistencyOutcome


def all_terms(n: int) -> Iterator[Term]:
    """3^n 个项：每个变量取 不出现 / 正文字 / 负文字，首项为空项"""
    for choice in product((None, 1, 0), repeat=n):
        yield Term(frozenset(Literal(i + 1, p) for i, p in enumerate(choice) if p is not None))


def _satisfaction_mask(part, samples: SampleSet) -> int:
    mask = 0
    for i, s in enumerate(samples):
        if part.satisfied_by(s.assignment):
            mask |= 1 << i
    return mask


def _target_mask(samples: SampleSet) -> int:
    return sum(1 << i for i, s in enumerate(samples) if s.label == 1)


def hypothesis_space_size(inst: ConsistencyInstance) -> int:
    """穷举需要检查的假设个数"""
    n, k = inst.width, inst.k
    if inst.kind in (ConceptKind.KCNF, ConceptKind.KDNF):
        return 2 ** sum(comb(n, i) * 2 ** i for i in range(min(k, n) + 1))
    if inst.kind in (ConceptKind.KTERM_DNF, ConceptKind.KCLAUSE_CNF):
        parts = 3 ** n
        return sum(comb(parts, i) for i in range(min(k, parts) + 1))
    return sum(comb(n, i) for i in range(min(k, n) + 1))


def _subsets(parts: Sequence, max_size: int) -> Iterator[Tuple[int, ...]]:
    return chain.from_iterable(combinations(range(len(parts)), size) for size in range(max_size + 1))


def _search_formulas(inst: ConsistencyInstance, parts: List, max_size: int, conjunctive: bool) -> ConsistencyOutcome:
    samples: SampleSet = inst.samples
    full = (1 << len(samples)) - 1
    target = _target_mask(samples)
    masks = [_satisfaction_mask(p, samples) for p in parts]
    for chosen in _subsets(parts, max_size):
        if conjunctive:
            value = reduce(lambda acc, i: acc & masks[i], chosen, full)
        else:
            value = reduce(lambda acc, i: acc | masks[i], chosen, 0)
        if value == target:
            selected = tuple(parts[i] for i in chosen)
            formula = CnfFormula(selected, samples.n) if conjunctive else DnfFormula(selected, samples.n)
            return ConsistencyOutcome.consistent(formula)
    return ConsistencyOutcome.inconsistent()


def _search_vertex_sets(inst: ConsistencyInstance) -> ConsistencyOutcome:
    samples: GraphSampleSet = inst.samples
    family = inst.family if inst.kind == ConceptKind.HDELETION else None
    vertices = range(1, samples.order + 1)
    for size in range(min(inst.k, samples.order) + 1):
        for S in combinations(vertices, size):
            concept = GraphDeletionConcept(VertexSet(frozenset(S), samples.order), family)
            if all(concept.accepts(g) == bool(label) for g, label in samples):
                return ConsistencyOutcome.consistent(concept)
    return ConsistencyOutcome.inconsistent()


def brute_force_consistency(inst: ConsistencyInstance) -> ConsistencyOutcome:
    """按固定枚举顺序返回首个一致假设；空间超过 brute_force_guard 时抛出GuardError

    k-CNF/k-DNF 枚举长度0..k的子句/项 (含空子句/空项) 的所有子集；k-term/k-clause 枚举 3^n 个部件中至多k个的组合；
    图概念按大小再按字典序枚举至多k个顶点的子集。
    """
    size = hypothesis_space_size(inst)
    if size > config.brute_force_guard:
        raise GuardError(f"{inst.kind.value} 假设空间 {size} 超过上限 {config.brute_force_guard}")
    logger.debug(f"穷举 {inst.kind.value}: 假设空间 {size}")

    kind, k = inst.kind, inst.k
    if kind.is_graph:
        return _search_vertex_sets(inst)
    n = inst.width
    if kind == ConceptKind.KCNF:
        clauses = list(short_clauses(n, min(k, n)))
        return _search_formulas(inst, clauses, len(clauses), conjunctive=True)
    if kind == ConceptKind.KDNF:
        terms = [Term(c.literals) for c in short_clauses(n, min(k, n))]
        return _search_formulas(inst, terms, len(terms), conjunctive=False)
    if kind == ConceptKind.KTERM_DNF:
        return _search_formulas(inst, list(all_terms(n)), k, conjunctive=False)
    if kind == ConceptKind.KCLAUSE_CNF:
        clauses = [Clause(t.literals) for t in all_terms(n)]
        return _search_formulas(inst, clauses, k, conjunctive=True)
    raise InputError(f"不支持的概念类: {kind}")


# 2^6 个点的真值表恰好是一个 uint64
TRUTH_TABLE_MAX_N = 6


def point_index(x: Assignment) -> int:
    """x1 为最高位"""
    return reduce(lambda acc, b: (acc << 1) | b, x.bits, 0)


def _part_tables(parts: Sequence, n: int) -> np.ndarray:
    points = [Assignment(tuple((p >> (n - 1 - i)) & 1 for i in range(n))) for p in range(2 ** n)]
    return np.array([sum(1 << p for p, x in enumerate(points) if part.satisfied_by(x)) for part in parts],
                    dtype=np.uint64)


def _check_table_count(kind: ConceptKind, count: int):
    if count > config.brute_force_guard:
        raise GuardError(f"{kind.value} 真值表数量 {count} 超过上限 {config.brute_force_guard}")


def _combine_up_to(kind: ConceptKind, masks: np.ndarray, start: int, rounds: int,
                   combine: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> np.ndarray:
    """至多rounds个部件组合出的全部真值表"""
    tables = frontier = np.array([start], dtype=np.uint64)
    for _ in range(rounds):
        _check_table_count(kind, frontier.size * masks.size)
        frontier = np.unique(combine(frontier[:, None], masks[None, :]).ravel())
        grown = np.union1d(tables, frontier)
        if grown.size == tables.size:
            break
        tables = grown
    return tables


def _combine_any(kind: ConceptKind, masks: np.ndarray, start: int,
                 combine: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> np.ndarray:
    """任意个部件组合出的全部真值表，逐个部件做闭包"""
    tables = np.array([start], dtype=np.uint64)
    for mask in masks:
        tables = np.union1d(tables, combine(tables, mask))
        _check_table_count(kind, tables.size)
    return tables


@lru_cache(maxsize=None)
def realizable_truth_tables(kind: ConceptKind, n: int, k: int) -> np.ndarray:
    """R_k 中全部假设在 2^n 个点上的真值表，第p位为第p个点 (point_index) 上的取值，升序去重"""
    kind = ConceptKind.parse(kind)
    if kind.is_graph:
        raise InputError(f"真值表只适用于布尔概念类: {kind.value}")
    if not (1 <= n <= TRUTH_TABLE_MAX_N):
        raise GuardError(f"真值表要求 1 ≤ n ≤ {TRUTH_TABLE_MAX_N}，得到 n={n}")
    full = (1 << 2 ** n) - 1
    if kind == ConceptKind.KCNF:
        tables = _combine_any(kind, _part_tables(list(short_clauses(n, min(k, n))), n), full, np.bitwise_and)
    elif kind == ConceptKind.KDNF:
        terms = [Term(c.literals) for c in short_clauses(n, min(k, n))]
        tables = _combine_any(kind, _part_tables(terms, n), 0, np.bitwise_or)
    elif kind == ConceptKind.KTERM_DNF:
        tables = _combine_up_to(kind, _part_tables(list(all_terms(n)), n), 0, k, np.bitwise_or)
    else:
        clauses = [Clause(t.literals) for t in all_terms(n)]
        tables = _combine_up_to(kind, _part_tables(clauses, n), full, k, np.bitwise_and)
    tables.flags.writeable = False
    logger.debug(f"{kind.value} n={n} k={k}: {tables.size} 个可实现真值表")
    return tables


def truth_table_consistency(inst: ConsistencyInstance) -> bool:
    """穷举判定的真值表形式：存在可实现真值表在样本点上与标签逐位相同"""
    samples: SampleSet = inst.samples
    tables = realizable_truth_tables(inst.kind, inst.width, inst.k)
    support = np.uint64(sum(1 << point_index(s.assignment) for s in samples))
    target = np.uint64(sum(1 << point_index(s.assignment) for s in samples if s.label == 1))
    return bool(np.any((tables & support) == target))
