"""
parapac - 核心模块
参数化PAC学习的基础数据类型、假设语义与参数κ/λ
"""

__version__ = "1.0.0"
__author__ = "parapac team"

from .concept import evaluate, hypothesis_from_json, hypothesis_to_json
from .config import ParapacConfig, config
from .exceptions import ParapacException
from .formula import (Clause, CnfFormula, DnfFormula, Literal, Term, dualize, eval_cnf, eval_dnf,
                      flip_polarity_transform)
from .graph import ForbiddenFamily, Graph, GraphDeletionConcept, GraphSampleSet, VertexSet
from .params import (ConceptKind, ParamInfo, kappa, kappa_clause_count, kappa_max_clause_len, kappa_max_term_len,
                     kappa_subset_size, kappa_term_count, lambda_backdoor, lambda_for)
from .sample import Assignment, LabeledSample, SampleSet

__all__ = [
    "ParapacConfig", "config", "ParapacException",
    "Assignment", "LabeledSample", "SampleSet",
    "Literal", "Term", "Clause", "DnfFormula", "CnfFormula",
    "eval_dnf", "eval_cnf", "dualize", "flip_polarity_transform",
    "Graph", "GraphSampleSet", "ForbiddenFamily", "VertexSet", "GraphDeletionConcept",
    "ConceptKind", "ParamInfo", "kappa", "kappa_term_count", "kappa_max_term_len", "kappa_clause_count",
    "kappa_max_clause_len", "kappa_subset_size", "lambda_backdoor", "lambda_for",
    "evaluate", "hypothesis_to_json", "hypothesis_from_json",
]
