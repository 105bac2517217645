"""
parapac - 试验调度器
在工作池中并行执行PAC学习试验，按试验编号顺序汇总为CSV与JSON摘要
"""

import asyncio
import csv
import json
import math
import time
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, InstanceOf, field_validator

from core.config import config
from core.exceptions import GuardError, RealizabilityError
from core.graph import GraphDeletionConcept
from .consistency.base import BaseChecker
from .consistency.registry import default_registry
from .metalearn import LearnerConfig, log_hyp_count, pac_learn_via_consistency, required_samples, scenario_oracle
from .oracle import HiddenScenario, RandomSource

CSV_HEADER = ["trial", "seed", "samples_used", "wall_time_ms", "exact_err", "success"]


class TaskStatus(Enum):
    PENDING = "pending"
    EXECUTING = "executing"
    COMPLETED = "completed"
    FAILED = "failed"


class ExperimentSpec(BaseModel):
    """一次实验：场景、精度、置信度、试验次数、种子与输出路径"""
    model_config = ConfigDict(frozen=True)

    scenario: InstanceOf[HiddenScenario]
    epsilon: float
    delta: float
    trials: int = Field(..., ge=1)
    seed: int = Field(default_factory=lambda: config.seed)
    out: Path
    jobs: int = Field(default_factory=lambda: config.jobs, ge=1)
    timing: bool = True

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

    @property
    def summary_path(self) -> Path:
        if self.out.suffix == ".json":
            return self.out.with_suffix(".summary.json")
        return self.out.with_suffix(".json")


@dataclass
class ResultRow:
    """一次试验的结果；不可实现的试验 exact_err 为 nan 且不计为成功"""
    trial: int
    seed: int
    samples_used: int
    wall_time_ms: float
    exact_err: float
    success: bool

    def to_csv(self) -> List[str]:
        return [str(self.trial), str(self.seed), str(self.samples_used), f"{self.wall_time_ms:.3f}",
                "nan" if math.isnan(self.exact_err) else f"{self.exact_err:.12g}", str(int(self.success))]


class TrialScheduler:
    """试验调度器：每次试验持有独立的随机子流，结果按编号汇总"""

    def __init__(self, spec: ExperimentSpec, checker: Optional[BaseChecker] = None):
        self.spec = spec
        scenario = spec.scenario
        family = scenario.hypothesis.family if isinstance(scenario.hypothesis, GraphDeletionConcept) else None
        self.checker = checker or default_registry().get_checker(scenario.kind, family)
        self.root = RandomSource(spec.seed)
        self.status: Dict[int, TaskStatus] = {i: TaskStatus.PENDING for i in range(spec.trials)}
        kind = self.checker.kind
        width = math.isqrt(scenario.n) if kind.is_graph else scenario.n
        self.samples_per_trial = required_samples(log_hyp_count(kind, width, scenario.params.k),
                                                  spec.epsilon, spec.delta)

    def run_trial(self, index: int) -> ResultRow:
        """执行单次试验；RealizabilityError 与 GuardError 被记录为失败行而不中断实验"""
        self.status[index] = TaskStatus.EXECUTING
        rng = self.root.substream(index)
        scenario = self.spec.scenario
        cfg = LearnerConfig(n=scenario.n, epsilon=self.spec.epsilon, delta=self.spec.delta,
                            params=scenario.params, seed=rng.derived_seed)
        start_time = time.perf_counter()
        try:
            record = pac_learn_via_consistency(cfg, scenario_oracle(scenario, rng), self.checker, scenario)
        except (RealizabilityError, GuardError) as e:
            self.status[index] = TaskStatus.FAILED
            logger.warning(f"试验 {index}: {e}")
            wall = (time.perf_counter() - start_time) * 1000 if self.spec.timing else 0.0
            return ResultRow(index, rng.derived_seed, self.samples_per_trial, wall, float("nan"), False)
        self.status[index] = TaskStatus.COMPLETED
        wall = record.wall_time_ms if self.spec.timing else 0.0
        return ResultRow(index, rng.derived_seed, record.samples_used, wall, record.exact_err,
                         record.exact_err <= self.spec.epsilon)

    async def run_all(self) -> List[ResultRow]:
        """在至多 jobs 个线程中并行执行全部试验"""
        semaphore = asyncio.Semaphore(self.spec.jobs)

        async def bounded(index: int) -> ResultRow:
            async with semaphore:
                return await asyncio.to_thread(self.run_trial, index)

        rows = await asyncio.gather(*(bounded(i) for i in range(self.spec.trials)))
        return sorted(rows, key=lambda r: r.trial)

    def failed_trials(self) -> List[int]:
        return [i for i, s in self.status.items() if s == TaskStatus.FAILED]


def write_results(rows: List[ResultRow], path: Path):
    """RFC-4180风格CSV，LF换行"""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow(row.to_csv())


def summarize(rows: List[ResultRow], spec: ExperimentSpec, samples_per_trial: int) -> Dict[str, Any]:
    trials = len(rows)
    return {
        "success_fraction": sum(r.success for r in rows) / trials,
        "mean_samples_used": sum(r.samples_used for r in rows) / trials,
        "mean_wall_time_ms": sum(r.wall_time_ms for r in rows) / trials,
        "trials": trials,
        "errors": sum(math.isnan(r.exact_err) for r in rows),
        "epsilon": spec.epsilon,
        "delta": spec.delta,
        "seed": spec.seed,
        "samples_per_trial": samples_per_trial,
    }


def run_experiment(spec: ExperimentSpec) -> Dict[str, Any]:
    """执行全部试验，写出CSV与同名JSON摘要，返回摘要"""
    scheduler = TrialScheduler(spec)
    logger.info(f"开始实验: {spec.trials} 次试验, ε={spec.epsilon}, δ={spec.delta}, "
                f"每次 {scheduler.samples_per_trial} 个样本, jobs={spec.jobs}")
    rows = asyncio.run(scheduler.run_all())
    write_results(rows, spec.out)
    summary = summarize(rows, spec, scheduler.samples_per_trial)
    spec.summary_path.write_text(json.dumps(summary, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
                                 encoding="utf-8")
    logger.info(f"实验完成: 成功率 {summary['success_fraction']:.3f}, 失败试验 {scheduler.failed_trials() or '无'}")
    return summary
