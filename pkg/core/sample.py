"""
parapac - 样本类型
赋值、带标签样本与样本集，所有布尔学习问题的基本数据
"""

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from .exceptions import InputError


@dataclass(frozen=True)
class Assignment:
    """定宽位串，bits[i-1] 是变量 i 的取值（变量从1开始编号）"""
    bits: Tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) < 1:
            raise InputError("赋值宽度n必须至少为1")
        if any(b not in (0, 1) for b in self.bits):
            raise InputError(f"赋值只能包含0/1: {self.bits}")

    @classmethod
    def from_string(cls, text: str) -> "Assignment":
        """从 '0110' 形式的位串构造"""
        if not text or any(c not in "01" for c in text):
            raise InputError(f"非法位串: {text!r}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def from_true_set(cls, n: int, variables: Iterable[int]) -> "Assignment":
        """将给定变量置1，其余置0"""
        bits = [0] * n
        for v in variables:
            if not (1 <= v <= n):
                raise InputError(f"变量 {v} 超出范围 [1, {n}]")
            bits[v - 1] = 1
        return cls(tuple(bits))

    @property
    def n(self) -> int:
        return len(self.bits)

    def value(self, variable: int) -> int:
        return self.bits[variable - 1]

    def true_variables(self) -> List[int]:
        return [i + 1 for i, b in enumerate(self.bits) if b]

    def complement(self) -> "Assignment":
        return Assignment(tuple(1 - b for b in self.bits))

    def restrict(self, variables: Sequence[int]) -> "Assignment":
        """投影到给定变量（按给定顺序重新编号）"""
        return Assignment(tuple(self.bits[v - 1] for v in variables))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class LabeledSample:
    """带标签样本 (x, c*(x))，标签1为正样本"""
    assignment: Assignment
    label: int

    def __post_init__(self):
        if self.label not in (0, 1):
            raise InputError(f"标签只能是0或1: {self.label}")

    @property
    def n(self) -> int:
        return self.assignment.n

    def flipped(self) -> "LabeledSample":
        return LabeledSample(self.assignment, 1 - self.label)

    def __str__(self) -> str:
        return f"{self.assignment} {self.label}"


class SampleSet:
    """有序样本集：宽度一致，赋值两两不同

    相同赋值且标签相同的重复样本被静默去重；标签冲突的重复样本被拒绝。
    """

    def __init__(self, samples: Iterable[LabeledSample], n: int):
        if n < 1:
            raise InputError("样本宽度n必须至少为1")
        self.n = n
        self._samples: List[LabeledSample] = []
        self._labels: Dict[Assignment, int] = {}
        for sample in samples:
            if sample.n != n:
                raise InputError(f"样本宽度 {sample.n} 与样本集宽度 {n} 不一致: {sample}")
            seen = self._labels.get(sample.assignment)
            if seen is None:
                self._labels[sample.assignment] = sample.label
                self._samples.append(sample)
            elif seen != sample.label:
                raise InputError(f"赋值 {sample.assignment} 出现冲突标签")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[str, int]], n: int = None) -> "SampleSet":
        """从 ('0110', 1) 形式的二元组构造"""
        samples = [LabeledSample(Assignment.from_string(bits), label) for bits, label in pairs]
        if n is None:
            if not samples:
                raise InputError("空样本集需要显式给出宽度n")
            n = samples[0].n
        return cls(samples, n)

    @property
    def samples(self) -> Tuple[LabeledSample, ...]:
        return tuple(self._samples)

    @property
    def positives(self) -> List[LabeledSample]:
        return [s for s in self._samples if s.label == 1]

    @property
    def negatives(self) -> List[LabeledSample]:
        return [s for s in self._samples if s.label == 0]

    @property
    def assignments(self) -> List[Assignment]:
        return [s.assignment for s in self._samples]

    def label_of(self, x: Assignment) -> int:
        """表查询标签；不存在时抛出InputError"""
        if x not in self._labels:
            raise InputError(f"赋值 {x} 不在样本集中")
        return self._labels[x]

    def flip_labels(self) -> "SampleSet":
        return SampleSet((s.flipped() for s in self._samples), self.n)

    def complement_assignments(self) -> "SampleSet":
        return SampleSet((LabeledSample(s.assignment.complement(), s.label) for s in self._samples), self.n)

    def __len__(self) -> int:
        return len(self._samples)

    def __iter__(self) -> Iterator[LabeledSample]:
        return iter(self._samples)

    def __getitem__(self, index: int) -> LabeledSample:
        return self._samples[index]

    def __eq__(self, other) -> bool:
        return isinstance(other, SampleSet) and self.n == other.n and self._samples == other._samples

    def __repr__(self) -> str:
        return f"SampleSet(n={self.n}, t={len(self)})"
