"""
parapac - 布尔公式
DNF/CNF表示、语义求值、De Morgan对偶与极性翻转
"""

from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .exceptions import InputError
from .sample import Assignment, LabeledSample, SampleSet


@dataclass(frozen=True, order=True)
class Literal:
    """文字：polarity=1 为正文字 x_v，0 为负文字 ¬x_v"""
    variable: int
    polarity: int

    def __post_init__(self):
        if self.variable < 1:
            raise InputError(f"变量编号必须 ≥ 1: {self.variable}")
        if self.polarity not in (0, 1):
            raise InputError(f"极性只能是0或1: {self.polarity}")

    @classmethod
    def from_signed(cls, value: int) -> "Literal":
        """DIMACS风格：3 表示 x3，-3 表示 ¬x3"""
        if value == 0:
            raise InputError("文字不能为0")
        return cls(abs(value), 1 if value > 0 else 0)

    def signed(self) -> int:
        return self.variable if self.polarity else -self.variable

    def negated(self) -> "Literal":
        return Literal(self.variable, 1 - self.polarity)

    def holds(self, x: Assignment) -> bool:
        return x.bits[self.variable - 1] == self.polarity

    def __str__(self) -> str:
        return f"x{self.variable}" if self.polarity else f"¬x{self.variable}"


class _LiteralSet:
    """Term与Clause的公共部分：同一变量不能同时以两种极性出现"""
    literals: FrozenSet[Literal]

    def _check(self):
        variables = [lit.variable for lit in self.literals]
        if len(variables) != len(set(variables)):
            raise InputError(f"同一变量以两种极性出现: {self.signed()}")

    @classmethod
    def from_signed(cls, values: Iterable[int]):
        return cls(frozenset(Literal.from_signed(v) for v in values))

    def signed(self) -> List[int]:
        return [lit.signed() for lit in sorted(self.literals)]

    def variables(self) -> List[int]:
        return sorted(lit.variable for lit in self.literals)

    def max_variable(self) -> int:
        return max((lit.variable for lit in self.literals), default=0)

    def __len__(self) -> int:
        return len(self.literals)


@dataclass(frozen=True)
class Term(_LiteralSet):
    """合取项；空项恒真"""
    literals: FrozenSet[Literal] = frozenset()

    def __post_init__(self):
        self._check()

    def satisfied_by(self, x: Assignment) -> bool:
        return all(x.bits[lit.variable - 1] == lit.polarity for lit in self.literals)

    def __str__(self) -> str:
        return "(" + " ∧ ".join(str(lit) for lit in sorted(self.literals)) + ")" if self.literals else "⊤"


@dataclass(frozen=True)
class Clause(_LiteralSet):
    """析取子句；空子句恒假"""
    literals: FrozenSet[Literal] = frozenset()

    def __post_init__(self):
        self._check()

    def satisfied_by(self, x: Assignment) -> bool:
        return any(x.bits[lit.variable - 1] == lit.polarity for lit in self.literals)

    def __str__(self) -> str:
        return "(" + " ∨ ".join(str(lit) for lit in sorted(self.literals)) + ")" if self.literals else "⊥"


@dataclass(frozen=True)
class DnfFormula:
    """DNF公式；空DNF恒假"""
    parts: Tuple[Term, ...]
    n: int

    def __post_init__(self):
        _check_width(self.parts, self.n)

    @classmethod
    def from_signed(cls, parts: Iterable[Iterable[int]], n: int) -> "DnfFormula":
        return cls(tuple(Term.from_signed(p) for p in parts), n)

    def evaluate(self, x: Assignment) -> int:
        return eval_dnf(self, x)

    def signed(self) -> List[List[int]]:
        return [p.signed() for p in self.parts]

    def __str__(self) -> str:
        return " ∨ ".join(str(t) for t in self.parts) if self.parts else "⊥"


@dataclass(frozen=True)
class CnfFormula:
    """CNF公式；空CNF恒真"""
    parts: Tuple[Clause, ...]
    n: int

    def __post_init__(self):
        _check_width(self.parts, self.n)

    @classmethod
    def from_signed(cls, parts: Iterable[Iterable[int]], n: int) -> "CnfFormula":
        return cls(tuple(Clause.from_signed(p) for p in parts), n)

    def evaluate(self, x: Assignment) -> int:
        return eval_cnf(self, x)

    def signed(self) -> List[List[int]]:
        return [p.signed() for p in self.parts]

    def __str__(self) -> str:
        return " ∧ ".join(str(c) for c in self.parts) if self.parts else "⊤"


Formula = Union[DnfFormula, CnfFormula]


def _check_width(parts: Sequence[_LiteralSet], n: int):
    if n < 1:
        raise InputError("公式宽度n必须至少为1")
    for part in parts:
        if part.max_variable() > n:
            raise InputError(f"文字变量 {part.max_variable()} 超出宽度 {n}")


def _check_same_width(formula: Formula, x: Assignment):
    if formula.n != x.n:
        raise InputError(f"公式宽度 {formula.n} 与赋值宽度 {x.n} 不一致")


def eval_dnf(formula: DnfFormula, x: Assignment) -> int:
    """存在某项的全部文字被x满足时为1"""
    _check_same_width(formula, x)
    return int(any(term.satisfied_by(x) for term in formula.parts))


def eval_cnf(formula: CnfFormula, x: Assignment) -> int:
    """每个子句都含有被x满足的文字时为1"""
    _check_same_width(formula, x)
    return int(all(clause.satisfied_by(x) for clause in formula.parts))


def dualize(formula: Formula, samples: Optional[SampleSet] = None) -> Tuple[Formula, Optional[SampleSet]]:
    """De Morgan取反：DNF项变为文字全部取反的CNF子句（反之亦然），样本标签翻转

    对任意x，对偶公式的值等于 1 - 原公式的值。
    """
    if isinstance(formula, DnfFormula):
        dual = CnfFormula(tuple(Clause(frozenset(lit.negated() for lit in t.literals)) for t in formula.parts), formula.n)
    elif isinstance(formula, CnfFormula):
        dual = DnfFormula(tuple(Term(frozenset(lit.negated() for lit in c.literals)) for c in formula.parts), formula.n)
    else:
        raise InputError(f"无法对偶化: {type(formula).__name__}")
    return dual, (samples.flip_labels() if samples is not None else None)


def flip_polarity_transform(samples: Optional[SampleSet],
                            formula: Optional[Formula] = None) -> Tuple[Optional[SampleSet], Optional[Formula]]:
    """对每个赋值逐位取反、对每个文字翻转极性；变换后的公式在变换后的赋值上取值不变"""
    flipped_samples = samples.complement_assignments() if samples is not None else None
    flipped = None
    if formula is not None:
        part_type = Term if isinstance(formula, DnfFormula) else Clause
        parts = tuple(part_type(frozenset(lit.negated() for lit in p.literals)) for p in formula.parts)
        flipped = type(formula)(parts, formula.n)
    return flipped_samples, flipped


def agrees_with(formula: Formula, samples: Iterable[LabeledSample]) -> bool:
    """公式在所有样本上给出正确标签"""
    return all(formula.evaluate(s.assignment) == s.label for s in samples)
