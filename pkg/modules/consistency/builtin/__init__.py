"""
parapac - 内置一致性检查器
"""

from .brute_force import brute_force_consistency, truth_table_consistency
from .graphs import FvsChecker, HDeletionChecker, fvs_consistency, hdeletion_consistency
from .kcnf import KCnfChecker, KDnfChecker, kcnf_consistency, kdnf_consistency
from .kterm import (KClauseCnfChecker, KernelTrace, KTermDnfChecker, kclause_cnf_consistency, kterm_dnf_consistency,
                    kterm_dnf_kernelize)

__all__ = [
    "brute_force_consistency", "truth_table_consistency",
    "kcnf_consistency", "kdnf_consistency", "KCnfChecker", "KDnfChecker",
    "kterm_dnf_kernelize", "kterm_dnf_consistency", "kclause_cnf_consistency", "KernelTrace",
    "KTermDnfChecker", "KClauseCnfChecker",
    "hdeletion_consistency", "fvs_consistency", "HDeletionChecker", "FvsChecker",
]
