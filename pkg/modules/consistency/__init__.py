"""
parapac - 一致性检查
提供检查器注册、分派与各概念类的一致性算法
"""

from .base import BaseChecker, ConsistencyInstance, ConsistencyOutcome, agrees
from .builtin import (KernelTrace, brute_force_consistency, fvs_consistency, hdeletion_consistency,
                      kclause_cnf_consistency, kcnf_consistency, kdnf_consistency, kterm_dnf_consistency,
                      kterm_dnf_kernelize, truth_table_consistency)
from .registry import CheckerRegistry, default_registry

__all__ = [
    "BaseChecker", "ConsistencyInstance", "ConsistencyOutcome", "agrees",
    "CheckerRegistry", "default_registry", "KernelTrace",
    "brute_force_consistency", "truth_table_consistency", "kcnf_consistency", "kdnf_consistency",
    "kterm_dnf_kernelize",
    "kterm_dnf_consistency", "kclause_cnf_consistency", "hdeletion_consistency", "fvs_consistency",
]
