"""
parapac - k-term DNF / k-clause CNF 一致性检查
以后门集S为参数的核化：三条归约规则 + 核上的项覆盖搜索 + 解提升
"""

from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from loguru import logger

from core.config import config
from core.exceptions import GuardError, InputError, KernelError
from core.formula import DnfFormula, Literal, Term, agrees_with, dualize, flip_polarity_transform
from core.params import ConceptKind, backdoor_conditions_hold, lambda_backdoor
from core.sample import Assignment, LabeledSample, SampleSet
from ..base import BaseChecker, ConsistencyOutcome


@dataclass(frozen=True)
class RemovedPositive:
    """R1：同一S类中有至少k+2个单枢轴正样本时删去其一"""
    sample: LabeledSample
    pivot: int

    def to_dict(self) -> Dict[str, Any]:
        return {"rule": "removed_positive", "sample": str(self.sample.assignment), "pivot": self.pivot}


@dataclass(frozen=True)
class RemovedNegative:
    """R2：S外唯一真变量不在其他样本中为真的负样本"""
    sample: LabeledSample
    pivot: int

    def to_dict(self) -> Dict[str, Any]:
        return {"rule": "removed_negative", "sample": str(self.sample.assignment), "pivot": self.pivot}


@dataclass(frozen=True)
class MergedVariables:
    """R3：在所有样本上取值相同的两个变量，保留kept"""
    kept: int
    removed: int

    def to_dict(self) -> Dict[str, Any]:
        return {"rule": "merged_variables", "kept": self.kept, "removed": self.removed}


TraceEntry = Union[RemovedPositive, RemovedNegative, MergedVariables]


@dataclass
class KernelTrace:
    """规则应用日志；columns[j] 是核中第 j+1 列对应的原变量"""
    original: SampleSet
    S: FrozenSet[int]
    k: int
    entries: List[TraceEntry] = field(default_factory=list)
    columns: Tuple[int, ...] = ()

    def lift(self, reduced: DnfFormula) -> DnfFormula:
        """把核上的一致公式提升为与原样本集一致的公式，逆序撤销各规则"""
        if reduced.n != len(self.columns):
            raise KernelError(f"核公式宽度 {reduced.n} 与核列数 {len(self.columns)} 不一致")
        terms = [Term(frozenset(Literal(self.columns[lit.variable - 1], lit.polarity) for lit in t.literals))
                 for t in reduced.parts]
        for entry in reversed(self.entries):
            if isinstance(entry, RemovedNegative):
                # 追加枢轴变量的否定；含其正文字的项只可能满足该负样本，直接丢弃
                positive, negative = Literal(entry.pivot, 1), Literal(entry.pivot, 0)
                terms = [Term(t.literals | {negative}) for t in terms if positive not in t.literals]
            elif isinstance(entry, RemovedPositive):
                x = entry.sample.assignment
                if any(t.satisfied_by(x) for t in terms):
                    continue
                negative = Literal(entry.pivot, 0)
                for i, t in enumerate(terms):
                    relaxed = Term(t.literals - {negative})
                    if relaxed.satisfied_by(x):
                        terms[i] = relaxed
                        break
                else:
                    raise KernelError(f"无法为被删正样本 {x} 找到全负文字项")
            # MergedVariables: 公式只引用kept列，而kept与removed在当时的样本上取值相同
        lifted = DnfFormula(tuple(terms), self.original.n)
        if not agrees_with(lifted, self.original):
            raise KernelError("提升后的公式与原样本集不一致")
        return lifted

    def to_dicts(self) -> List[Dict[str, Any]]:
        return [e.to_dict() for e in self.entries]


def kernel_bounds(s: int, k: int) -> Tuple[int, int]:
    """(样本数上界, 变量数上界) = (2^s·(k+2), s + 2^s·(k+2) + 1)"""
    samples = (2 ** s) * (k + 2)
    return samples, s + samples + 1


class _Kernel:
    """核化过程的可变状态；样本保持原始赋值，列为仍存活的原变量"""

    def __init__(self, samples: SampleSet, k: int, S: FrozenSet[int]):
        self.k = k
        self.S = S
        self.current: List[LabeledSample] = list(samples)
        self.columns: List[int] = list(range(1, samples.n + 1))
        self.entries: List[TraceEntry] = []

    def outside_true(self, x: Assignment) -> List[int]:
        return [v for v in self.columns if v not in self.S and x.bits[v - 1]]

    def true_elsewhere(self, variable: int, owner: LabeledSample) -> bool:
        return any(s.assignment.bits[variable - 1] for s in self.current if s is not owner)

    def merge_identical(self) -> bool:
        """R3：合并首个取值相同的列对，优先保留S中的变量"""
        groups: Dict[Tuple[int, ...], List[int]] = {}
        for v in self.columns:
            groups.setdefault(tuple(s.assignment.bits[v - 1] for s in self.current), []).append(v)
        for group in groups.values():
            if len(group) < 2:
                continue
            in_s = [v for v in group if v in self.S]
            kept = min(in_s) if in_s else min(group)
            removed = next(v for v in group if v != kept)
            self.columns.remove(removed)
            self.entries.append(MergedVariables(kept, removed))
            logger.debug(f"R3 合并变量: x{removed} → x{kept}")
            return True
        return False

    def remove_negative(self) -> bool:
        """R2"""
        for sample in self.current:
            if sample.label != 0:
                continue
            outside = self.outside_true(sample.assignment)
            if len(outside) == 1 and not self.true_elsewhere(outside[0], sample):
                self.current.remove(sample)
                self.entries.append(RemovedNegative(sample, outside[0]))
                logger.debug(f"R2 删除负样本 {sample.assignment} (枢轴 x{outside[0]})")
                return True
        return False

    def remove_positive(self) -> bool:
        """R1"""
        s_columns = [v for v in self.columns if v in self.S]
        classes: Dict[Tuple[int, ...], List[Tuple[LabeledSample, int]]] = {}
        for sample in self.current:
            if sample.label != 1:
                continue
            outside = self.outside_true(sample.assignment)
            if len(outside) != 1 or self.true_elsewhere(outside[0], sample):
                continue
            key = tuple(sample.assignment.bits[v - 1] for v in s_columns)
            classes.setdefault(key, []).append((sample, outside[0]))
        for members in classes.values():
            if len(members) >= self.k + 2:
                sample, pivot = members[-1]
                self.current.remove(sample)
                self.entries.append(RemovedPositive(sample, pivot))
                logger.debug(f"R1 删除正样本 {sample.assignment} (枢轴 x{pivot}, 类大小 {len(members)})")
                return True
        return False


def kterm_dnf_kernelize(samples: SampleSet, k: int, S: Iterable[int]) -> Tuple[SampleSet, KernelTrace]:
    """按 R3 > R2 > R1 的优先级反复应用归约规则直至不可用，每次应用后重新扫描

    输出满足：样本数 ≤ 2^s·(k+2)，变量数 ≤ s + 2^s·(k+2) + 1，s = |S|。
    """
    S = frozenset(S)
    if k < 0:
        raise InputError(f"k必须非负: {k}")
    if any(not (1 <= v <= samples.n) for v in S):
        raise InputError(f"后门集 {sorted(S)} 超出变量范围 [1, {samples.n}]")
    if not backdoor_conditions_hold(samples.assignments, S, 1):
        raise InputError(f"{sorted(S)} 不是样本集的后门集 (pivot=1)")

    kernel = _Kernel(samples, k, S)
    while kernel.merge_identical() or kernel.remove_negative() or kernel.remove_positive():
        pass

    columns = tuple(kernel.columns)
    reduced = SampleSet((LabeledSample(s.assignment.restrict(columns), s.label) for s in kernel.current), len(columns))
    trace = KernelTrace(samples, S, k, kernel.entries, columns)

    max_samples, max_variables = kernel_bounds(len(S), k)
    if len(reduced) > max_samples or reduced.n > max_variables:
        raise KernelError(f"核大小 (t={len(reduced)}, n={reduced.n}) 超出界限 ({max_samples}, {max_variables})")
    logger.debug(f"核化完成: t {len(samples)}→{len(reduced)}, n {samples.n}→{reduced.n}, "
                 f"s={len(S)}, 规则应用 {len(trace.entries)} 次")
    return reduced, trace


Pattern = Tuple[Optional[int], ...]


def _cover_positives(reduced: SampleSet, k: int) -> Optional[List[Pattern]]:
    """把正样本划分为至多k组，每组取其最特殊的项（各组成员一致的列），要求不满足任何负样本

    任何一致的项集合都可把每个项换成它所覆盖正样本的最特殊项而不满足更多负样本，
    因此存在划分当且仅当存在至多k项的一致DNF。
    """
    positives = [s.assignment.bits for s in reduced.positives]
    negatives = [s.assignment.bits for s in reduced.negatives]
    if not positives:
        return []
    budget = [config.term_search_guard]

    def rejects_all(pattern: Pattern) -> bool:
        return not any(all(p is None or p == b for p, b in zip(pattern, neg)) for neg in negatives)

    def search(i: int, groups: List[Pattern]) -> Optional[List[Pattern]]:
        budget[0] -= 1
        if budget[0] < 0:
            raise GuardError(f"项覆盖搜索超过 {config.term_search_guard} 个节点")
        if i == len(positives):
            return list(groups)
        x = positives[i]
        for g, pattern in enumerate(groups):
            merged = tuple(p if p == b else None for p, b in zip(pattern, x))
            if merged == pattern or rejects_all(merged):
                groups[g] = merged
                found = search(i + 1, groups)
                if found is not None:
                    return found
                groups[g] = pattern
        if len(groups) < k:
            groups.append(tuple(x))
            found = search(i + 1, groups)
            if found is not None:
                return found
            groups.pop()
        return None

    return search(0, [])


def _pattern_term(pattern: Pattern) -> Term:
    return Term(frozenset(Literal(i + 1, b) for i, b in enumerate(pattern) if b is not None))


def kterm_dnf_consistency(samples: SampleSet, k: int) -> ConsistencyOutcome:
    """λ后门 → 核化 → 核上覆盖搜索 → 经轨迹提升回原样本集"""
    if k < 0:
        raise InputError(f"k必须非负: {k}")
    if len(samples) == 0:
        return ConsistencyOutcome.consistent(DnfFormula((), samples.n))
    ell, S = lambda_backdoor(samples, 1)
    reduced, trace = kterm_dnf_kernelize(samples, k, S)
    groups = _cover_positives(reduced, k)
    if groups is None:
        logger.debug(f"k-term DNF 不一致 (k={k}, ℓ={ell}, 核 t={len(reduced)}, n={reduced.n})")
        return ConsistencyOutcome.inconsistent()
    formula = DnfFormula(tuple(_pattern_term(p) for p in groups), reduced.n)
    return ConsistencyOutcome.consistent(trace.lift(formula))


def kclause_cnf_consistency(samples: SampleSet, k: int) -> ConsistencyOutcome:
    """赋值逐位取反 + 标签翻转后求 k-term DNF，再对偶化并翻转文字极性"""
    flipped, _ = flip_polarity_transform(samples)
    outcome = kterm_dnf_consistency(flipped.flip_labels(), k)
    if not outcome.is_consistent:
        return outcome
    cnf, _ = dualize(outcome.hypothesis)
    _, cnf = flip_polarity_transform(None, cnf)
    return ConsistencyOutcome.consistent(cnf)


class KTermDnfChecker(BaseChecker):
    """至多k项的DNF，参数 k + s"""
    kind = ConceptKind.KTERM_DNF
    description = "k-term DNF，后门核化（FPT于 k+s）"

    def check(self, samples: SampleSet, k: int) -> ConsistencyOutcome:
        return kterm_dnf_consistency(samples, k)


class KClauseCnfChecker(BaseChecker):
    """至多k个子句的CNF，参数 k + s（pivot=0）"""
    kind = ConceptKind.KCLAUSE_CNF
    description = "k-clause CNF，经极性翻转与对偶化归约到 k-term DNF"

    def check(self, samples: SampleSet, k: int) -> ConsistencyOutcome:
        return kclause_cnf_consistency(samples, k)
