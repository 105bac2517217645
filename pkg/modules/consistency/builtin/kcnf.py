"""
parapac - k-CNF / k-DNF 一致性检查
经典消去法：保留被所有正样本满足的短子句，再检查其合取是否拒绝所有负样本
"""

from itertools import combinations, product
from typing import Iterator

from loguru import logger

from core.exceptions import InputError
from core.formula import Clause, CnfFormula, Literal, dualize
from core.params import ConceptKind
from core.sample import SampleSet
from ..base import BaseChecker, ConsistencyOutcome


def short_clauses(n: int, k: int) -> Iterator[Clause]:
    """所有含0..k个文字的子句，按长度、变量组合、极性的字典序；首个为恒假的空子句"""
    for size in range(k + 1):
        for variables in combinations(range(1, n + 1), size):
            for polarities in product((1, 0), repeat=size):
                yield Clause(frozenset(Literal(v, p) for v, p in zip(variables, polarities)))


def kcnf_consistency(samples: SampleSet, k: int) -> ConsistencyOutcome:
    """幸存子句的合取Φ在所有负样本上为0时一致，否则不存在一致的k-CNF

    任何一致k-CNF的子句都是幸存者，而增加子句只会缩小满足集，故该判定完备。
    空子句只在没有正样本时幸存，此时Φ恒假。
    """
    if k < 0 or k > samples.n:
        raise InputError(f"k-CNF 要求 0 ≤ k ≤ n，得到 k={k}, n={samples.n}")
    if len(samples) == 0:
        return ConsistencyOutcome.consistent(CnfFormula((), samples.n))
    positives = [s.assignment for s in samples.positives]
    survivors = tuple(c for c in short_clauses(samples.n, k) if all(c.satisfied_by(x) for x in positives))
    phi = CnfFormula(survivors, samples.n)
    for s in samples.negatives:
        if phi.evaluate(s.assignment):
            logger.debug(f"k-CNF 不一致: 负样本 {s.assignment} 被 {len(survivors)} 个幸存子句同时满足")
            return ConsistencyOutcome.inconsistent()
    return ConsistencyOutcome.consistent(phi)


def kdnf_consistency(samples: SampleSet, k: int) -> ConsistencyOutcome:
    """翻转标签后求k-CNF，再对偶回DNF"""
    outcome = kcnf_consistency(samples.flip_labels(), k)
    if not outcome.is_consistent:
        return outcome
    dnf, _ = dualize(outcome.hypothesis)
    return ConsistencyOutcome.consistent(dnf)


class KCnfChecker(BaseChecker):
    """子句长度至多k的CNF"""
    kind = ConceptKind.KCNF
    description = "k-CNF 消去法（XP）"

    def check(self, samples: SampleSet, k: int) -> ConsistencyOutcome:
        return kcnf_consistency(samples, k)


class KDnfChecker(BaseChecker):
    """项长度至多k的DNF"""
    kind = ConceptKind.KDNF
    description = "k-DNF，经对偶化归约到 k-CNF"

    def check(self, samples: SampleSet, k: int) -> ConsistencyOutcome:
        return kdnf_consistency(samples, k)
