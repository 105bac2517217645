"""
parapac - 功能模块
包含样本预言机、一致性检查、学习桥梁、困难性归约与试验调度
"""

from .consistency import CheckerRegistry, ConsistencyInstance, ConsistencyOutcome, default_registry
from .metalearn import (ConsistencyLearner, LearnerConfig, LearnRunRecord, consistency_via_pac_learner,
                        log_hyp_count, pac_learn_via_consistency, required_samples)
from .oracle import FiniteDistribution, HiddenScenario, RandomSource, draw, exact_error, monte_carlo_error
from .reductions import (HittingSetInstance, brute_force_hitting_set, extract_hitting_set, hitting_set_from_fvs,
                         hitting_set_to_fvs, hitting_set_to_kcnf)
from .scheduler import ExperimentSpec, ResultRow, TrialScheduler, run_experiment

__all__ = [
    "CheckerRegistry", "ConsistencyInstance", "ConsistencyOutcome", "default_registry",
    "LearnerConfig", "LearnRunRecord", "ConsistencyLearner", "log_hyp_count", "required_samples",
    "pac_learn_via_consistency", "consistency_via_pac_learner",
    "RandomSource", "FiniteDistribution", "HiddenScenario", "draw", "exact_error", "monte_carlo_error",
    "HittingSetInstance", "brute_force_hitting_set", "hitting_set_to_kcnf", "hitting_set_to_fvs",
    "extract_hitting_set", "hitting_set_from_fvs",
    "ExperimentSpec", "ResultRow", "TrialScheduler", "run_experiment",
]
