"""
parapac - 一致性检查基类
定义一致性实例、检查结果与检查器的标准接口
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional, Union

from core.concept import Hypothesis, empty_hypothesis, evaluate
from core.exceptions import InputError
from core.graph import ForbiddenFamily, GraphSampleSet
from core.params import ConceptKind, kappa
from core.sample import SampleSet

Samples = Union[SampleSet, GraphSampleSet]


@dataclass(frozen=True)
class ConsistencyInstance:
    """一致性检查输入；size_bound 即假设长度上界 f(n,t,k,ℓ)，可选"""
    kind: ConceptKind
    samples: Samples
    k: int
    size_bound: Optional[int] = None
    family: Optional[ForbiddenFamily] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", ConceptKind.parse(self.kind))
        if self.k < 0:
            raise InputError(f"k必须非负: {self.k}")
        if self.kind.is_graph != isinstance(self.samples, GraphSampleSet):
            raise InputError(f"{self.kind.value} 与样本类型 {type(self.samples).__name__} 不匹配")
        if self.kind == ConceptKind.HDELETION and self.family is None:
            raise InputError("hdeletion 实例必须给出禁止子图族")

    @property
    def width(self) -> int:
        """布尔实例为n，图实例为N"""
        return self.samples.order if isinstance(self.samples, GraphSampleSet) else self.samples.n


@dataclass(frozen=True)
class ConsistencyOutcome:
    """Consistent(hypothesis) 或 Inconsistent"""
    hypothesis: Optional[Hypothesis] = None

    @classmethod
    def consistent(cls, hypothesis: Hypothesis) -> "ConsistencyOutcome":
        return cls(hypothesis)

    @classmethod
    def inconsistent(cls) -> "ConsistencyOutcome":
        return cls(None)

    @property
    def is_consistent(self) -> bool:
        return self.hypothesis is not None

    def __str__(self) -> str:
        return f"Consistent({self.hypothesis})" if self.is_consistent else "Inconsistent"


def agrees(hypothesis: Hypothesis, samples: Samples) -> bool:
    """假设在每个样本上给出正确标签"""
    if isinstance(samples, GraphSampleSet):
        return all(hypothesis.accepts(g) == bool(label) for g, label in samples)
    return all(evaluate(hypothesis, s.assignment) == s.label for s in samples)


class BaseChecker(ABC):
    """一致性检查器基类"""

    kind: ConceptKind
    description: str = ""

    def __init__(self, name: Optional[str] = None):
        self.name = name or self.kind.value

    @abstractmethod
    def check(self, samples: Samples, k: int) -> ConsistencyOutcome:
        """在R_k中寻找与全部样本一致的假设"""
        pass

    def validate_parameters(self, samples: Samples, k: int) -> bool:
        if k < 0:
            raise InputError(f"k必须非负: {k}")
        if self.kind.is_graph != isinstance(samples, GraphSampleSet):
            raise InputError(f"检查器 {self.name} 不接受 {type(samples).__name__}")
        return True

    def canonical(self, samples: Samples) -> Hypothesis:
        """空样本集的规范假设"""
        width = samples.order if isinstance(samples, GraphSampleSet) else samples.n
        return empty_hypothesis(self.kind, width, getattr(self, "family", None))

    def verify(self, outcome: ConsistencyOutcome, samples: Samples, k: int) -> bool:
        """可靠性：Consistent(h) 必须与全部样本一致且 κ(h) ≤ k"""
        if not outcome.is_consistent:
            return True
        return agrees(outcome.hypothesis, samples) and kappa(self.kind, outcome.hypothesis) <= k
