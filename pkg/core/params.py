"""
parapac - 参数化
表示参数κ与分布/样本参数λ的计算
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Sequence, Set, Tuple

from .exceptions import InputError
from .formula import CnfFormula, DnfFormula
from .graph import GraphDeletionConcept, VertexSet
from .sample import Assignment


class ConceptKind(str, Enum):
    """概念类（一致性检查问题的种类）"""
    KCNF = "kcnf"
    KDNF = "kdnf"
    KTERM_DNF = "kterm_dnf"
    KCLAUSE_CNF = "kclause_cnf"
    HDELETION = "hdeletion"
    FVS = "fvs"

    @property
    def is_graph(self) -> bool:
        return self in (ConceptKind.HDELETION, ConceptKind.FVS)

    @classmethod
    def parse(cls, value) -> "ConceptKind":
        try:
            return cls(value)
        except ValueError:
            raise InputError(f"未知的概念类: {value!r}，可选 {[k.value for k in cls]}")


@dataclass(frozen=True)
class ParamInfo:
    """承诺给学习器的参数：k = κ(r*)，ell = λ(D_n)"""
    k: int
    ell: int = 0

    def __post_init__(self):
        if self.k < 0 or self.ell < 0:
            raise InputError(f"参数必须非负: k={self.k}, ell={self.ell}")


def kappa_term_count(f: DnfFormula) -> int:
    return len(f.parts)


def kappa_max_term_len(f: DnfFormula) -> int:
    return max((len(t) for t in f.parts), default=0)


def kappa_clause_count(f: CnfFormula) -> int:
    return len(f.parts)


def kappa_max_clause_len(f: CnfFormula) -> int:
    return max((len(c) for c in f.parts), default=0)


def kappa_subset_size(S: VertexSet) -> int:
    return len(S)


def kappa(kind: ConceptKind, hypothesis) -> int:
    """按概念类分派κ"""
    kind = ConceptKind.parse(kind)
    expected = {
        ConceptKind.KCNF: CnfFormula,
        ConceptKind.KCLAUSE_CNF: CnfFormula,
        ConceptKind.KDNF: DnfFormula,
        ConceptKind.KTERM_DNF: DnfFormula,
    }
    if kind.is_graph:
        if isinstance(hypothesis, GraphDeletionConcept):
            hypothesis = hypothesis.deletion_set
        if not isinstance(hypothesis, VertexSet):
            raise InputError(f"{kind.value} 的假设必须是顶点集")
        return kappa_subset_size(hypothesis)
    if not isinstance(hypothesis, expected[kind]):
        raise InputError(f"{kind.value} 的假设必须是 {expected[kind].__name__}")
    if kind == ConceptKind.KCNF:
        return kappa_max_clause_len(hypothesis)
    if kind == ConceptKind.KDNF:
        return kappa_max_term_len(hypothesis)
    if kind == ConceptKind.KTERM_DNF:
        return kappa_term_count(hypothesis)
    return kappa_clause_count(hypothesis)


def backdoor_conditions_hold(assignments: Sequence[Assignment], S: Iterable[int], pivot: int) -> bool:
    """(a) 每个赋值在S外至多一个变量取pivot；(b) S外每个变量至多被一个赋值取pivot"""
    S = set(S)
    owners = {}
    for x in assignments:
        outside = [i + 1 for i, b in enumerate(x.bits) if b == pivot and (i + 1) not in S]
        if len(outside) > 1:
            return False
        for v in outside:
            if v in owners:
                return False
            owners[v] = x
    return True


def lambda_backdoor(samples, pivot: int = 1) -> Tuple[int, Set[int]]:
    """最小后门集S及其大小

    取pivot至少两次的变量必入S；其余变量各自至多在一个赋值中取pivot，
    每个赋值保留编号最小的一个，其余入S。各赋值之间的选择互不影响，因此贪心即最优。
    """
    if pivot not in (0, 1):
        raise InputError(f"pivot只能是0或1: {pivot}")
    assignments = _as_assignments(samples)
    counts = {}
    for x in assignments:
        for i, b in enumerate(x.bits):
            if b == pivot:
                counts[i + 1] = counts.get(i + 1, 0) + 1
    S = {v for v, c in counts.items() if c >= 2}
    for x in assignments:
        free = [i + 1 for i, b in enumerate(x.bits) if b == pivot and (i + 1) not in S]
        S.update(free[1:])
    return len(S), S


def lambda_for(kind: ConceptKind, samples) -> int:
    """按概念类分派λ：k-term DNF/k-clause CNF 用后门大小，k-CNF/k-DNF 为常数0，图问题为常数1"""
    kind = ConceptKind.parse(kind)
    if kind == ConceptKind.KTERM_DNF:
        return lambda_backdoor(samples, 1)[0]
    if kind == ConceptKind.KCLAUSE_CNF:
        return lambda_backdoor(samples, 0)[0]
    return 1 if kind.is_graph else 0


def _as_assignments(samples) -> List[Assignment]:
    items = list(samples)
    return [s if isinstance(s, Assignment) else s.assignment for s in items]
