"""
parapac - 实例文件解析
布尔/图/Hitting Set 实例与场景JSON的解析和序列化，错误附带行号与字段诊断
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from core.concept import hypothesis_from_dict, hypothesis_to_dict
from core.exceptions import InputError, ParseError
from core.graph import ForbiddenFamily, Graph, GraphSampleSet
from core.params import ConceptKind, ParamInfo
from core.sample import Assignment, LabeledSample, SampleSet
from modules.consistency.base import ConsistencyInstance
from modules.oracle import FiniteDistribution, HiddenScenario
from modules.reductions import HittingSetInstance

ParsedFile = Union[ConsistencyInstance, HittingSetInstance, HiddenScenario]

HEADER_KEYS = {
    "BOOL": ("kind", "n", "k"),
    "GRAPH": ("kind", "N", "k"),
    "HS": ("n", "k"),
}


class InstanceParser:
    """逐行解析器，记录来源路径以便报告诊断"""

    def __init__(self, text: str, path: Optional[str] = None):
        self.path = path
        # 行号从1开始；空行与 # 注释被跳过
        self.lines: List[Tuple[int, str]] = [(i, line.strip()) for i, line in enumerate(text.splitlines(), 1)
                                             if line.strip() and not line.strip().startswith("#")]
        self.text = text

    def error(self, message: str, line: Optional[int] = None, field: Optional[str] = None) -> ParseError:
        return ParseError(message, self.path, line, field)

    def parse(self) -> ParsedFile:
        if self.text.lstrip().startswith("{"):
            return self.parse_scenario()
        if not self.lines:
            raise self.error("文件为空", 1)
        line_no, header = self.lines[0]
        tokens = header.split()
        if len(tokens) < 2 or tokens[0] != "PARAPAC" or tokens[1] not in HEADER_KEYS:
            raise self.error(f"无法识别的文件头: {header!r}，应为 PARAPAC BOOL|GRAPH|HS ...", line_no)
        fields = self._header_fields(tokens[2:], line_no)
        for key in HEADER_KEYS[tokens[1]]:
            if key not in fields:
                raise self.error("文件头缺少字段", line_no, key)
        body = self.lines[1:]
        if tokens[1] == "BOOL":
            return self._parse_bool(fields, body, line_no)
        if tokens[1] == "GRAPH":
            return self._parse_graph(fields, body, line_no)
        return self._parse_hitting_set(fields, body, line_no)

    def _header_fields(self, tokens: List[str], line_no: int) -> Dict[str, str]:
        fields = {}
        for token in tokens:
            key, sep, value = token.partition("=")
            if not sep or not value:
                raise self.error(f"文件头字段应为 key=value: {token!r}", line_no)
            fields[key] = value
        return fields

    def _int_field(self, fields: Dict[str, str], key: str, line_no: int, minimum: int = 0) -> int:
        try:
            value = int(fields[key])
        except ValueError:
            raise self.error(f"不是整数: {fields[key]!r}", line_no, key)
        if value < minimum:
            raise self.error(f"必须 ≥ {minimum}: {value}", line_no, key)
        return value

    def _kind_field(self, fields: Dict[str, str], line_no: int, graph: bool) -> ConceptKind:
        try:
            kind = ConceptKind.parse(fields["kind"])
        except InputError as e:
            raise self.error(str(e), line_no, "kind")
        if kind.is_graph != graph:
            raise self.error(f"{kind.value} 不能用于 {'GRAPH' if graph else 'BOOL'} 实例", line_no, "kind")
        return kind

    def _parse_bool(self, fields: Dict[str, str], body, header_line: int) -> ConsistencyInstance:
        kind = self._kind_field(fields, header_line, graph=False)
        n = self._int_field(fields, "n", header_line, 1)
        k = self._int_field(fields, "k", header_line)
        samples: List[LabeledSample] = []
        seen: Dict[Assignment, int] = {}
        for line_no, line in body:
            parts = line.split()
            if len(parts) != 2:
                raise self.error(f"样本行应为 '<位串> <标签>': {line!r}", line_no)
            bits, label = parts
            if len(bits) != n:
                raise self.error(f"位串宽度 {len(bits)} 与 n={n} 不一致", line_no, "bits")
            if label not in ("0", "1"):
                raise self.error(f"标签只能是0或1: {label!r}", line_no, "label")
            try:
                x = Assignment.from_string(bits)
            except InputError as e:
                raise self.error(str(e), line_no, "bits")
            if seen.get(x, int(label)) != int(label):
                raise self.error(f"赋值 {bits} 出现冲突标签", line_no, "label")
            seen[x] = int(label)
            samples.append(LabeledSample(x, int(label)))
        try:
            return ConsistencyInstance(kind, SampleSet(samples, n), k)
        except InputError as e:
            raise self.error(str(e), header_line)

    def _parse_graph(self, fields: Dict[str, str], body, header_line: int) -> ConsistencyInstance:
        kind = self._kind_field(fields, header_line, graph=True)
        order = self._int_field(fields, "N", header_line, 1)
        k = self._int_field(fields, "k", header_line)
        family = None
        if "family" in fields:
            try:
                family = ForbiddenFamily.named(fields["family"])
            except InputError as e:
                raise self.error(str(e), header_line, "family")
        elif kind == ConceptKind.HDELETION:
            raise self.error("hdeletion 实例需要 family 字段", header_line, "family")

        graphs: List[Graph] = []
        labels: List[int] = []
        seen: Dict[Graph, int] = {}
        current: Optional[List[Tuple[int, int]]] = None
        label, start = 0, header_line
        for line_no, line in body:
            parts = line.split()
            if current is None:
                if len(parts) != 2 or parts[0] != "SAMPLE" or parts[1] not in ("0", "1"):
                    raise self.error(f"应为 'SAMPLE <标签>': {line!r}", line_no)
                current, label, start = [], int(parts[1]), line_no
            elif parts == ["END"]:
                try:
                    g = Graph.from_edges(order, current)
                except InputError as e:
                    raise self.error(str(e), start, "edges")
                if seen.get(g, label) != label:
                    raise self.error("相同的图出现冲突标签", start, "label")
                seen[g] = label
                graphs.append(g)
                labels.append(label)
                current = None
            else:
                if len(parts) != 2 or not all(p.isdigit() for p in parts):
                    raise self.error(f"边行应为 '<u> <v>': {line!r}", line_no, "edges")
                current.append((int(parts[0]), int(parts[1])))
        if current is not None:
            raise self.error("样本块缺少 END", start)
        try:
            return ConsistencyInstance(kind, GraphSampleSet(graphs, labels, order), k, family=family)
        except InputError as e:
            raise self.error(str(e), header_line)

    def _parse_hitting_set(self, fields: Dict[str, str], body, header_line: int) -> HittingSetInstance:
        n = self._int_field(fields, "n", header_line, 1)
        k = self._int_field(fields, "k", header_line)
        family = []
        for line_no, line in body:
            parts = line.split()
            if not all(p.isdigit() for p in parts):
                raise self.error(f"集合行应为空格分隔的元素编号: {line!r}", line_no)
            members = frozenset(int(p) for p in parts)
            bad = [v for v in members if not (1 <= v <= n)]
            if bad:
                raise self.error(f"元素 {sorted(bad)} 超出 [1, {n}]", line_no)
            family.append(members)
        return HittingSetInstance(n, tuple(family), k)

    def parse_scenario(self) -> HiddenScenario:
        try:
            data = json.loads(self.text)
        except json.JSONDecodeError as e:
            raise self.error(f"JSON解析失败: {e.msg}", e.lineno)
        if not isinstance(data, dict):
            raise self.error("场景必须是JSON对象")
        for key in ("kind", "n", "hypothesis", "support", "k", "ell"):
            if key not in data:
                raise self.error("场景缺少字段", field=key)
        try:
            kind = ConceptKind.parse(data["kind"])
        except InputError as e:
            raise self.error(str(e), field="kind")
        try:
            hypothesis = hypothesis_from_dict(data["hypothesis"])
        except InputError as e:
            raise self.error(str(e), field="hypothesis")
        try:
            n = int(data["n"])
            support = tuple(Assignment.from_string(str(p["bits"])) for p in data["support"])
            weights = tuple(float(p["weight"]) for p in data["support"])
            distribution = FiniteDistribution(n, support, weights)
        except (KeyError, TypeError, ValueError) as e:
            raise self.error(f"支撑格式错误: {e}", field="support")
        except InputError as e:
            raise self.error(str(e), field="support")
        try:
            params = ParamInfo(int(data["k"]), int(data["ell"]))
            return HiddenScenario(kind, hypothesis, distribution, params)
        except (TypeError, ValueError) as e:
            raise self.error(f"参数格式错误: {e}", field="k")
        except InputError as e:
            raise self.error(str(e))


def parse_text(text: str, path: Optional[str] = None) -> ParsedFile:
    return InstanceParser(text, path).parse()


def parse_instance(path: Union[str, Path]) -> ParsedFile:
    """按文件内容分派：PARAPAC BOOL / GRAPH / HS 文本或场景JSON"""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"无法读取文件: {e.strerror}", str(path))
    return parse_text(text, str(path))


def dump_instance(inst: ConsistencyInstance) -> str:
    """parse_text 的逆"""
    if isinstance(inst.samples, GraphSampleSet):
        header = f"PARAPAC GRAPH kind={inst.kind.value} N={inst.samples.order} k={inst.k}"
        if inst.family is not None:
            if not inst.family.names:
                raise InputError("只有具名禁止子图族可以序列化")
            header += f" family={inst.family.label()}"
        lines = [header]
        for g, label in inst.samples:
            lines.append(f"SAMPLE {label}")
            lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
            lines.append("END")
    else:
        lines = [f"PARAPAC BOOL kind={inst.kind.value} n={inst.samples.n} k={inst.k}"]
        lines.extend(str(s) for s in inst.samples)
    return "\n".join(lines) + "\n"


def dump_hitting_set(inst: HittingSetInstance) -> str:
    lines = [f"PARAPAC HS n={inst.universe_size} k={inst.k}"]
    lines.extend(" ".join(str(v) for v in sorted(members)) for members in inst.family)
    return "\n".join(lines) + "\n"


def scenario_to_dict(scenario: HiddenScenario) -> Dict[str, Any]:
    return {
        "kind": scenario.kind.value,
        "n": scenario.n,
        "hypothesis": hypothesis_to_dict(scenario.hypothesis),
        "support": [{"bits": str(x), "weight": w}
                    for x, w in zip(scenario.distribution.support, scenario.distribution.weights)],
        "k": scenario.params.k,
        "ell": scenario.params.ell,
    }


def dump_scenario(scenario: HiddenScenario) -> str:
    return json.dumps(scenario_to_dict(scenario), indent=2, ensure_ascii=False) + "\n"
