"""
parapac - 假设的统一求值与规范序列化
"""

import json
from typing import Any, Dict, Optional, Union

from .exceptions import InputError
from .formula import CnfFormula, DnfFormula
from .graph import ForbiddenFamily, GraphDeletionConcept, VertexSet
from .params import ConceptKind
from .sample import Assignment

Hypothesis = Union[DnfFormula, CnfFormula, GraphDeletionConcept]


def evaluate(hypothesis: Hypothesis, x: Assignment) -> int:
    """ρ的实现：任意假设在赋值上的取值"""
    if not hasattr(hypothesis, "evaluate"):
        raise InputError(f"无法求值: {type(hypothesis).__name__}")
    return hypothesis.evaluate(x)


def width_of(hypothesis: Hypothesis) -> int:
    return hypothesis.n


def empty_hypothesis(kind: ConceptKind, n: int, family: Optional[ForbiddenFamily] = None) -> Hypothesis:
    """空样本集对应的规范假设：空公式或空顶点集"""
    kind = ConceptKind.parse(kind)
    if kind in (ConceptKind.KCNF, ConceptKind.KCLAUSE_CNF):
        return CnfFormula((), n)
    if kind in (ConceptKind.KDNF, ConceptKind.KTERM_DNF):
        return DnfFormula((), n)
    return GraphDeletionConcept(VertexSet(frozenset(), n), family if kind == ConceptKind.HDELETION else None)


def hypothesis_to_dict(hypothesis: Hypothesis) -> Dict[str, Any]:
    if isinstance(hypothesis, DnfFormula):
        return {"type": "dnf", "n": hypothesis.n, "parts": hypothesis.signed()}
    if isinstance(hypothesis, CnfFormula):
        return {"type": "cnf", "n": hypothesis.n, "parts": hypothesis.signed()}
    if isinstance(hypothesis, GraphDeletionConcept):
        data = {"type": "vertex_set", "N": hypothesis.deletion_set.N, "vertices": hypothesis.deletion_set.sorted()}
        if hypothesis.family is not None:
            data["family"] = hypothesis.family.label()
        return data
    raise InputError(f"无法序列化: {type(hypothesis).__name__}")


def hypothesis_from_dict(data: Dict[str, Any]) -> Hypothesis:
    try:
        kind = data["type"]
        if kind == "dnf":
            return DnfFormula.from_signed(data["parts"], int(data["n"]))
        if kind == "cnf":
            return CnfFormula.from_signed(data["parts"], int(data["n"]))
        if kind == "vertex_set":
            family = ForbiddenFamily.named(data["family"]) if data.get("family") else None
            return GraphDeletionConcept(VertexSet(frozenset(int(v) for v in data["vertices"]), int(data["N"])), family)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"假设格式错误: {e}") from e
    raise InputError(f"未知的假设类型: {data.get('type')!r}")


def hypothesis_to_json(hypothesis: Hypothesis) -> str:
    """规范序列化（键有序、无多余空白），size_bound按其长度检查"""
    return json.dumps(hypothesis_to_dict(hypothesis), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def hypothesis_from_json(text: str) -> Hypothesis:
    try:
        return hypothesis_from_dict(json.loads(text))
    except json.JSONDecodeError as e:
        raise InputError(f"假设JSON解析失败: {e}") from e
