"""
parapac - 检查器注册机制
按概念类分派一致性检查，验证结果并记录调用指标
"""

import time
from typing import Dict, Optional

from loguru import logger

from core.concept import hypothesis_to_json
from core.exceptions import InputError, ParapacException
from core.graph import ForbiddenFamily
from core.params import ConceptKind
from .base import BaseChecker, ConsistencyInstance, ConsistencyOutcome
from .builtin import (FvsChecker, HDeletionChecker, KClauseCnfChecker, KCnfChecker, KDnfChecker,
                      KTermDnfChecker)


def _empty_metrics() -> Dict[str, float]:
    return {"calls": 0, "consistent": 0, "inconsistent": 0, "failures": 0, "oversize": 0, "total_time": 0.0}


class CheckerRegistry:
    """检查器注册和执行系统"""

    def __init__(self):
        self.checkers: Dict[ConceptKind, BaseChecker] = {}
        self.metrics: Dict[str, Dict[str, float]] = {}  # 检查器调用指标

    def register_checker(self, checker: BaseChecker):
        """注册检查器；同一概念类后注册者覆盖先注册者"""
        if not isinstance(checker, BaseChecker):
            raise InputError(f"不是检查器: {type(checker).__name__}")
        self.checkers[checker.kind] = checker
        self.metrics.setdefault(checker.name, _empty_metrics())
        logger.debug(f"检查器注册成功: {checker.name} ({checker.description})")

    def get_checker(self, kind: ConceptKind, family: Optional[ForbiddenFamily] = None) -> BaseChecker:
        """hdeletion 的禁止子图族与已注册的族不同时临时构造检查器"""
        kind = ConceptKind.parse(kind)
        checker = self.checkers.get(kind)
        if kind == ConceptKind.HDELETION and (checker is None or checker.family != family):
            if family is None:
                raise InputError("hdeletion 需要禁止子图族")
            checker = HDeletionChecker(family)
            self.metrics.setdefault(checker.name, _empty_metrics())
        if checker is None:
            raise InputError(f"未注册 {kind.value} 的检查器")
        return checker

    def checker_for(self, inst: ConsistencyInstance) -> BaseChecker:
        return self.get_checker(inst.kind, inst.family)

    def solve(self, inst: ConsistencyInstance) -> ConsistencyOutcome:
        """执行一致性检查；空样本集直接返回规范假设，非空时复核可靠性"""
        checker = self.checker_for(inst)
        samples = inst.samples
        checker.validate_parameters(samples, inst.k)

        start_time = time.perf_counter()
        try:
            if len(samples) == 0:
                outcome = ConsistencyOutcome.consistent(checker.canonical(samples))
            else:
                outcome = checker.check(samples, inst.k)
        except Exception:
            self._record_metrics(checker.name, 0.0, None)
            raise
        exec_time = (time.perf_counter() - start_time) * 1000

        if not checker.verify(outcome, samples, inst.k):
            self._record_metrics(checker.name, exec_time, None)
            raise ParapacException(f"检查器 {checker.name} 返回的假设未通过复核: {outcome}")
        self._record_metrics(checker.name, exec_time, outcome.is_consistent)
        if outcome.is_consistent and inst.size_bound is not None:
            length = len(hypothesis_to_json(outcome.hypothesis))
            if length > inst.size_bound:
                self.metrics[checker.name]["oversize"] += 1
                logger.warning(f"{checker.name}: 假设长度 {length} 超出 size_bound={inst.size_bound}")
        logger.debug(f"{checker.name} 完成 (t={len(samples)}, k={inst.k}): "
                     f"{'一致' if outcome.is_consistent else '不一致'}，耗时 {exec_time:.1f}ms")
        return outcome

    def _record_metrics(self, name: str, exec_time: float, consistent: Optional[bool]):
        """记录检查器调用指标；consistent为None表示失败"""
        if name not in self.metrics:
            return
        self.metrics[name]["calls"] += 1
        if consistent is None:
            self.metrics[name]["failures"] += 1
        elif consistent:
            self.metrics[name]["consistent"] += 1
        else:
            self.metrics[name]["inconsistent"] += 1
        self.metrics[name]["total_time"] += exec_time

    def get_metrics(self, name: str = None) -> Dict:
        """获取检查器调用指标"""
        if name:
            return self.metrics.get(name, {})
        return self.metrics


def default_registry(family: Optional[ForbiddenFamily] = None) -> CheckerRegistry:
    """注册全部内置检查器；未给出禁止子图族时 hdeletion 按实例的族临时构造"""
    registry = CheckerRegistry()
    for checker in (KCnfChecker(), KDnfChecker(), KTermDnfChecker(), KClauseCnfChecker(), FvsChecker()):
        registry.register_checker(checker)
    if family is not None:
        registry.register_checker(HDeletionChecker(family))
    return registry
