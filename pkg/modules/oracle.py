"""
parapac - 样本预言机
模拟隐藏表示r*与隐藏分布D_n，提供带标签样本并计算泛化误差
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from core.concept import Hypothesis, evaluate, width_of
from core.config import config
from core.exceptions import InputError
from core.params import ConceptKind, ParamInfo, kappa, lambda_for
from core.sample import Assignment, LabeledSample


class RandomSource:
    """可复现、可分裂的伪随机源；子流由 (seed, 路径) 派生"""

    def __init__(self, seed: int, path: Tuple[int, ...] = ()):
        if not (0 <= seed < 2 ** 64):
            raise InputError(f"seed必须在[0, 2^64)之间: {seed}")
        self.seed = seed
        self.path = tuple(path)
        self._sequence = np.random.SeedSequence([seed, *self.path])
        self.generator = np.random.Generator(np.random.PCG64(self._sequence))

    def substream(self, index: int) -> "RandomSource":
        """第index个子流（如每次试验一个），与父流及兄弟流独立"""
        return RandomSource(self.seed, self.path + (index,))

    @property
    def derived_seed(self) -> int:
        """该子流的64位派生种子，写入实验结果"""
        return int(self._sequence.generate_state(1, np.uint64)[0])

    def random(self, size: Optional[int] = None):
        return self.generator.random(size)

    def integers(self, low: int, high: int, size: Optional[int] = None):
        return self.generator.integers(low, high, size=size)

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed}, path={self.path})"


@dataclass(frozen=True)
class FiniteDistribution:
    """显式有限支撑上的分布；权重严格为正且和在容差内为1"""
    n: int
    support: Tuple[Assignment, ...]
    weights: Tuple[float, ...]

    def __post_init__(self):
        if not self.support:
            raise InputError("分布支撑不能为空")
        if len(self.support) != len(self.weights):
            raise InputError("支撑与权重数量不一致")
        if len(set(self.support)) != len(self.support):
            raise InputError("支撑中的赋值必须两两不同")
        if any(x.n != self.n for x in self.support):
            raise InputError(f"支撑中存在宽度不为 {self.n} 的赋值")
        if any(not (w > 0) for w in self.weights):
            raise InputError("权重必须严格为正")
        total = float(sum(self.weights))
        if abs(total - 1.0) > config.weight_tolerance:
            raise InputError(f"权重之和为 {total:.12g}，超出归一化容差 {config.weight_tolerance:g}")

    @cached_property
    def cdf(self) -> np.ndarray:
        return np.cumsum(np.asarray(self.weights, dtype=np.float64))

    def sample_indices(self, rng: RandomSource, size: int) -> np.ndarray:
        """逆CDF采样支撑下标"""
        idx = np.searchsorted(self.cdf, rng.random(size), side="right")
        return np.minimum(idx, len(self.support) - 1)

    def sample(self, rng: RandomSource) -> Assignment:
        return self.support[int(self.sample_indices(rng, 1)[0])]


@dataclass(frozen=True)
class HiddenScenario:
    """隐藏假设 + 隐藏分布 + 参数承诺"""
    kind: ConceptKind
    hypothesis: Hypothesis
    distribution: FiniteDistribution
    params: ParamInfo

    def __post_init__(self):
        object.__setattr__(self, "kind", ConceptKind.parse(self.kind))
        if width_of(self.hypothesis) != self.distribution.n:
            raise InputError(f"假设宽度 {width_of(self.hypothesis)} 与分布宽度 {self.distribution.n} 不一致")
        k = kappa(self.kind, self.hypothesis)
        if self.params.k != k:
            raise InputError(f"参数k={self.params.k} 与假设的κ={k} 不一致")
        ell = lambda_for(self.kind, self.distribution.support)
        if self.params.ell != ell:
            raise InputError(f"参数ell={self.params.ell} 与支撑的λ={ell} 不一致")

    @property
    def n(self) -> int:
        return self.distribution.n

    def label(self, x: Assignment) -> int:
        return evaluate(self.hypothesis, x)


def draw(scenario: HiddenScenario, rng: RandomSource) -> LabeledSample:
    """一次预言机调用：按分布独立抽取x，返回 (x, c*(x))"""
    x = scenario.distribution.sample(rng)
    return LabeledSample(x, scenario.label(x))


def typical_uniform_sampler(X: Iterable[Assignment]) -> FiniteDistribution:
    """X上的均匀分布，支撑恰为X（对基于支撑的λ而言是典型分布）"""
    support = tuple(dict.fromkeys(X))
    if not support:
        raise InputError("X不能为空")
    n = support[0].n
    return FiniteDistribution(n, support, tuple([1.0 / len(support)] * len(support)))


def _disagreement(h: Hypothesis, scenario: HiddenScenario) -> np.ndarray:
    if width_of(h) != scenario.n:
        raise InputError(f"假设宽度 {width_of(h)} 与场景宽度 {scenario.n} 不一致")
    return np.array([evaluate(h, x) != scenario.label(x) for x in scenario.distribution.support], dtype=bool)


def exact_error(h: Hypothesis, scenario: HiddenScenario) -> float:
    """Σ weight(x)·[h(x) ≠ c*(x)]，支撑显式因此精确"""
    mask = _disagreement(h, scenario)
    return float(sum(w for w, bad in zip(scenario.distribution.weights, mask) if bad))


def monte_carlo_error(h: Hypothesis, scenario: HiddenScenario, trials: int, rng: RandomSource) -> float:
    """不一致抽样比例，trials→∞ 时收敛到 exact_error"""
    if trials < 1:
        raise InputError(f"trials必须至少为1: {trials}")
    mask = _disagreement(h, scenario)
    indices = scenario.distribution.sample_indices(rng, trials)
    estimate = float(mask[indices].mean())
    logger.debug(f"蒙特卡洛误差估计: {estimate:.6f} ({trials}次抽样)")
    return estimate


def uniform_scenario(kind: ConceptKind, hypothesis: Hypothesis, support: Sequence[Assignment]) -> HiddenScenario:
    """支撑上均匀分布的场景，参数按κ/λ自动填入"""
    distribution = typical_uniform_sampler(support)
    params = ParamInfo(kappa(kind, hypothesis), lambda_for(kind, distribution.support))
    return HiddenScenario(ConceptKind.parse(kind), hypothesis, distribution, params)
