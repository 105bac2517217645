"""
parapac - 学习与判定之间的桥梁
由一致性检查器构造PAC学习器，由PAC学习器构造随机化一致性判定，并计算样本复杂度
"""

import math
import time
from dataclasses import dataclass
from typing import Callable, Optional

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, InstanceOf, field_validator

from core.concept import Hypothesis, empty_hypothesis
from core.exceptions import InputError, RealizabilityError
from core.graph import GraphSampleSet
from core.params import ConceptKind, ParamInfo, lambda_for
from core.sample import LabeledSample, SampleSet
from .consistency.base import BaseChecker, ConsistencyOutcome, agrees
from .oracle import HiddenScenario, RandomSource, draw, exact_error, typical_uniform_sampler

OracleDraw = Callable[[], LabeledSample]


class LearnerConfig(BaseModel):
    """学习器输入：宽度n、精度ε、置信度δ、参数承诺与种子"""
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1)
    epsilon: float
    delta: float
    params: InstanceOf[ParamInfo]
    seed: int = 0

    @field_validator("epsilon", "delta")
    @classmethod
    def unit_interval(cls, v):
        if not (0 < v <= 1):
            raise ValueError("必须在 (0, 1] 之间")
        return v

    @field_validator("seed")
    @classmethod
    def seed_range(cls, v):
        if not (0 <= v < 2 ** 64):
            raise ValueError("seed必须在[0, 2^64)之间")
        return v


@dataclass
class LearnRunRecord:
    """一次学习运行的记录；samples_used 即实际抽取的样本数"""
    samples_used: int
    wall_time_ms: float
    hypothesis: Hypothesis
    ell: int = 0
    exact_err: Optional[float] = None


def log_hyp_count(kind: ConceptKind, n: int, k: int) -> float:
    """log₂|H_{n,k}|；图概念类的 n 为顶点数N"""
    kind = ConceptKind.parse(kind)
    if n < 1 or k < 0:
        raise InputError(f"需要 n ≥ 1 且 k ≥ 0，得到 n={n}, k={k}")
    if kind in (ConceptKind.KCNF, ConceptKind.KDNF):
        # 每个长度 ≤ k 的子句/项或在或不在
        return float(sum(math.comb(n, i) * 2 ** i for i in range(1, min(k, n) + 1)))
    if kind in (ConceptKind.KTERM_DNF, ConceptKind.KCLAUSE_CNF):
        return k * n * math.log2(3)
    return math.log2(sum(math.comb(n, i) for i in range(min(k, n) + 1)))


def required_samples(log_hyp: float, epsilon: float, delta: float) -> int:
    """ceil((1/ε)·(ln|H| + 1/δ))"""
    if not (0 < epsilon <= 1 and 0 < delta <= 1):
        raise InputError(f"epsilon与delta必须在 (0, 1] 之间: ε={epsilon}, δ={delta}")
    if log_hyp < 0:
        raise InputError(f"log_hyp不能为负: {log_hyp}")
    return math.ceil((log_hyp * math.log(2) + 1 / delta) / epsilon)


def scenario_oracle(scenario: HiddenScenario, rng: RandomSource) -> OracleDraw:
    """绑定随机源的预言机，每次调用抽取一个带标签样本"""
    return lambda: draw(scenario, rng)


def _hypothesis_width(kind: ConceptKind, n: int) -> int:
    if kind.is_graph:
        order = math.isqrt(n)
        if order * order != n:
            raise InputError(f"图概念类的宽度 {n} 不是完全平方数")
        return order
    return n


def pac_learn_via_consistency(cfg: LearnerConfig, oracle_draw: OracleDraw, checker: BaseChecker,
                              scenario: Optional[HiddenScenario] = None) -> LearnRunRecord:
    """抽取 t = required_samples(log|H|, ε, δ) 个样本后调用一致性检查器；给出场景时计算精确误差"""
    kind = checker.kind
    width = _hypothesis_width(kind, cfg.n)
    t = required_samples(log_hyp_count(kind, width, cfg.params.k), cfg.epsilon, cfg.delta)

    start_time = time.perf_counter()
    drawn = [oracle_draw() for _ in range(t)]
    samples = SampleSet(drawn, cfg.n)
    ell = lambda_for(kind, samples)
    checked = GraphSampleSet.from_samples(samples) if kind.is_graph else samples
    outcome = checker.check(checked, cfg.params.k)
    wall_time_ms = (time.perf_counter() - start_time) * 1000

    if not outcome.is_consistent:
        raise RealizabilityError(f"{checker.name} 在 {len(samples)} 个不同样本上报告不一致，场景不可实现")
    if not checker.verify(outcome, checked, cfg.params.k):
        raise RealizabilityError(f"{checker.name} 返回的假设未通过复核")
    logger.debug(f"{checker.name}: 抽取 {t} 个样本（去重后 {len(samples)}），ℓ={ell}，耗时 {wall_time_ms:.1f}ms")

    record = LearnRunRecord(t, wall_time_ms, outcome.hypothesis, ell)
    if scenario is not None:
        record.exact_err = exact_error(outcome.hypothesis, scenario)
    return record


class ConsistencyLearner:
    """把一致性检查器包装成PAC学习器"""

    def __init__(self, checker: BaseChecker):
        self.checker = checker
        self.kind = checker.kind

    def __call__(self, cfg: LearnerConfig, oracle_draw: OracleDraw) -> LearnRunRecord:
        return pac_learn_via_consistency(cfg, oracle_draw, self.checker)


Learner = Callable[[LearnerConfig, OracleDraw], LearnRunRecord]


def consistency_via_pac_learner(samples: SampleSet, learner: Learner, delta: float, k: int,
                                seed: int = 0) -> ConsistencyOutcome:
    """在样本赋值的均匀分布上以 ε = 1/(t+1) 运行学习器，用查表模拟预言机

    均匀分布下误差 < 1/(t+1) 等价于与全部t个样本一致，因此复核通过即为一致。
    """
    kind = getattr(learner, "kind", None)
    t = len(samples)
    if t == 0:
        if kind is None:
            raise InputError("空样本集需要带有概念类的学习器")
        kind = ConceptKind.parse(kind)
        return ConsistencyOutcome.consistent(empty_hypothesis(kind, _hypothesis_width(kind, samples.n),
                                                              getattr(learner.checker, "family", None)))

    distribution = typical_uniform_sampler(samples.assignments)
    rng = RandomSource(seed)

    def emulated_draw() -> LabeledSample:
        x = distribution.sample(rng)
        return LabeledSample(x, samples.label_of(x))

    ell = lambda_for(kind, samples) if kind is not None else 0
    cfg = LearnerConfig(n=samples.n, epsilon=1 / (t + 1), delta=delta, params=ParamInfo(k, ell), seed=seed)
    try:
        record = learner(cfg, emulated_draw)
    except RealizabilityError as e:
        logger.debug(f"学习器报告不可实现，判定为不一致: {e}")
        return ConsistencyOutcome.inconsistent()
    if agrees(record.hypothesis, samples):
        return ConsistencyOutcome.consistent(record.hypothesis)
    return ConsistencyOutcome.inconsistent()
