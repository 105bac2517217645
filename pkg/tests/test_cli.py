import io
import json
import os
import sys
import tempfile
import unittest
from contextlib import redirect_stdout
from pathlib import Path

# 添加父目录到路径
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import run
from core.exceptions import ParseError
from core.formula import DnfFormula
from core.params import ConceptKind
from core.sample import Assignment
from modules.consistency import ConsistencyInstance
from modules.oracle import HiddenScenario, uniform_scenario
from modules.reductions import HittingSetInstance
from utils.parser import dump_hitting_set, dump_instance, dump_scenario, parse_instance, parse_text

KCNF_FILE = "PARAPAC BOOL kind=kcnf n=2 k=1\n# 单个正样本\n10 1\n"
XOR_FILE = "PARAPAC BOOL kind=kcnf n=2 k=1\n01 1\n10 1\n11 0\n00 0\n"
UNIT_FILE = "PARAPAC BOOL kind=kterm_dnf n=4 k=1\n1000 1\n0100 1\n0010 1\n0001 1\n"
HS_FILE = "PARAPAC HS n=3 k=1\n1 2\n2 3\n"
GRAPH_FILE = "PARAPAC GRAPH kind=hdeletion N=5 k=2 family=K2\nSAMPLE 1\n1 2\n2 3\n1 3\nEND\nSAMPLE 0\n4 5\nEND\n"


class TestParser(unittest.TestCase):
    """实例文件解析测试"""

    def test_bool(self):
        inst = parse_text(KCNF_FILE)
        self.assertIsInstance(inst, ConsistencyInstance)
        self.assertEqual((inst.kind, inst.k, inst.samples.n, len(inst.samples)), (ConceptKind.KCNF, 1, 2, 1))
        self.assertEqual(parse_text(dump_instance(inst)).samples, inst.samples)

    def test_graph(self):
        inst = parse_text(GRAPH_FILE)
        self.assertEqual(inst.kind, ConceptKind.HDELETION)
        self.assertEqual(inst.family.label(), "K2")
        self.assertEqual(len(inst.samples.yes_graphs), 1)
        self.assertEqual(parse_text(dump_instance(inst)).samples.graphs, inst.samples.graphs)

    def test_hitting_set(self):
        inst = parse_text(HS_FILE)
        self.assertIsInstance(inst, HittingSetInstance)
        self.assertEqual(inst.family, (frozenset({1, 2}), frozenset({2, 3})))
        self.assertEqual(parse_text(dump_hitting_set(inst)), inst)

    def test_scenario(self):
        scenario = uniform_scenario(ConceptKind.KTERM_DNF, DnfFormula.from_signed([[1, -2]], 2),
                                    [Assignment.from_string(s) for s in ("00", "10")])
        parsed = parse_text(dump_scenario(scenario))
        self.assertIsInstance(parsed, HiddenScenario)
        self.assertEqual(parsed.hypothesis, scenario.hypothesis)
        self.assertEqual(parsed.params, scenario.params)

    def test_empty_samples_section(self):
        inst = parse_text("PARAPAC BOOL kind=kterm_dnf n=3 k=0\n")
        self.assertEqual(len(inst.samples), 0)

    def test_weights_must_sum_to_one(self):
        scenario = {"kind": "kdnf", "n": 1, "hypothesis": {"type": "dnf", "n": 1, "parts": [[1]]},
                    "support": [{"bits": "0", "weight": 0.4}, {"bits": "1", "weight": 0.4}], "k": 1, "ell": 0}
        with self.assertRaises(ParseError) as ctx:
            parse_text(json.dumps(scenario))
        self.assertEqual(ctx.exception.field, "support")

    def test_diagnostics(self):
        with self.assertRaises(ParseError) as ctx:
            parse_text("PARAPAC BOOL kind=kcnf n=2 k=1\n10 1\n1 1\n", "bad.txt")
        self.assertEqual((ctx.exception.line, ctx.exception.field), (3, "bits"))
        with self.assertRaises(ParseError) as ctx:
            parse_text("PARAPAC BOOL kind=kcnf n=2\n10 1\n")
        self.assertEqual(ctx.exception.field, "k")
        with self.assertRaises(ParseError) as ctx:
            parse_text("PARAPAC BOOL kind=kcnf n=2 k=1\n10 1\n10 0\n")
        self.assertEqual((ctx.exception.line, ctx.exception.field), (3, "label"))
        with self.assertRaises(ParseError) as ctx:
            parse_text("PARAPAC GRAPH kind=fvs N=3 k=1\nSAMPLE 1\n1 2\n")
        self.assertEqual(ctx.exception.line, 2)
        with self.assertRaises(ParseError):
            parse_text("PARAPAC GRAPH kind=hdeletion N=3 k=1\n")
        with self.assertRaises(ParseError):
            parse_text("")
        with self.assertRaises(ParseError):
            parse_instance("/nonexistent/instance.txt")


class TestCli(unittest.TestCase):
    """命令行子命令与退出码测试"""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, name: str, text: str) -> str:
        path = self.dir / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    def call(self, *argv):
        out = io.StringIO()
        with redirect_stdout(out):
            code = run.main(["--log-level", "ERROR", *argv])
        return code, out.getvalue()

    def test_check_consistent(self):
        code, out = self.call("check", "--kind", "kcnf", "--k", "1", "--input", self.write("a.txt", KCNF_FILE))
        self.assertEqual(code, 0)
        self.assertEqual(out.strip(), '{"n":2,"parts":[[1],[-2]],"type":"cnf"}')

    def test_check_inconsistent(self):
        code, out = self.call("check", "--kind", "kcnf", "--k", "1", "--input", self.write("x.txt", XOR_FILE))
        self.assertEqual((code, out), (1, ""))

    def test_check_kind_override(self):
        code, out = self.call("check", "--kind", "kdnf", "--k", "2", "--input", self.write("x.txt", XOR_FILE))
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["type"], "dnf")

    def test_check_graph(self):
        code, out = self.call("check", "--kind", "hdeletion", "--k", "2", "--input", self.write("g.txt", GRAPH_FILE))
        self.assertEqual(code, 0)
        data = json.loads(out)
        self.assertEqual((data["type"], data["family"], len(data["vertices"])), ("vertex_set", "K2", 2))

    def test_check_size_bound_still_succeeds(self):
        code, _ = self.call("check", "--kind", "kcnf", "--k", "1", "--size-bound", "3",
                            "--input", self.write("a.txt", KCNF_FILE))
        self.assertEqual(code, 0)

    def test_input_errors(self):
        code, _ = self.call("check", "--kind", "kcnf", "--k", "1", "--input", self.write("b.txt", "PARAPAC BOOL\n"))
        self.assertEqual(code, 2)
        code, _ = self.call("check", "--kind", "kcnf", "--k", "1", "--input", str(self.dir / "missing.txt"))
        self.assertEqual(code, 2)
        with self.assertRaises(SystemExit) as ctx:
            self.call("check", "--kind", "kcnf", "--input", self.write("a.txt", KCNF_FILE))
        self.assertEqual(ctx.exception.code, 2)

    def test_reduce(self):
        out = self.dir / "reduced.txt"
        code, _ = self.call("reduce", "hs-to-kcnf", "--input", self.write("hs.txt", HS_FILE), "--out", str(out))
        self.assertEqual(code, 0)
        inst = parse_instance(out)
        self.assertEqual(inst.kind, ConceptKind.KCNF)
        self.assertEqual([(str(s.assignment), s.label) for s in inst.samples], [("110", 1), ("011", 1), ("000", 0)])
        code, _ = self.call("reduce", "hs-to-fvs", "--input", self.write("hs.txt", HS_FILE), "--out", str(out))
        self.assertEqual(code, 2)

    def test_reduce_budget_above_universe(self):
        out = self.dir / "reduced.txt"
        code, _ = self.call("reduce", "hs-to-kcnf", "--input", self.write("hs.txt", "PARAPAC HS n=1 k=2\n1\n"),
                            "--out", str(out))
        self.assertEqual(code, 0)
        self.assertEqual(parse_instance(out).k, 1)
        code, text = self.call("check", "--kind", "kcnf", "--k", "1", "--input", str(out))
        self.assertEqual(code, 0)
        self.assertEqual(text.strip(), '{"n":1,"parts":[[1]],"type":"cnf"}')

    def test_reduce_to_fvs(self):
        out = self.dir / "fvs.txt"
        code, _ = self.call("reduce", "hs-to-fvs", "--input", self.write("hs.txt", "PARAPAC HS n=4 k=1\n1 2 3\n2 3 4\n"),
                            "--out", str(out))
        self.assertEqual(code, 0)
        inst = parse_instance(out)
        self.assertEqual(inst.kind, ConceptKind.FVS)
        self.assertEqual(len(inst.samples), 2)

    def test_disjoint_triples_fvs_inconsistent(self):
        reduced = self.dir / "triples.txt"
        hs = self.write("hs.txt", "PARAPAC HS n=6 k=1\n1 2 3\n4 5 6\n")
        self.assertEqual(self.call("reduce", "hs-to-fvs", "--input", hs, "--out", str(reduced))[0], 0)
        code, out = self.call("check", "--kind", "fvs", "--k", "1", "--input", str(reduced))
        self.assertEqual((code, out), (1, ""))

    def test_kernelize(self):
        out, trace = self.dir / "kernel.txt", self.dir / "trace.json"
        code, _ = self.call("kernelize", "--input", self.write("u.txt", UNIT_FILE), "--out", str(out),
                            "--trace", str(trace))
        self.assertEqual(code, 0)
        kernel = parse_instance(out)
        self.assertLessEqual(len(kernel.samples), 3)
        self.assertLessEqual(kernel.samples.n, 4)
        data = json.loads(trace.read_text(encoding="utf-8"))
        self.assertEqual((data["S"], data["k"], len(data["entries"])), ([], 1, 3))

    def test_kernelize_rejects_other_kinds(self):
        code, _ = self.call("kernelize", "--input", self.write("a.txt", KCNF_FILE), "--out", str(self.dir / "k.txt"))
        self.assertEqual(code, 2)

    def test_learn_is_reproducible(self):
        scenario = uniform_scenario(ConceptKind.KTERM_DNF, DnfFormula.from_signed([[1, -2]], 2),
                                    [Assignment.from_string(s) for s in ("00", "01", "10", "11")])
        path = self.write("scenario.json", dump_scenario(scenario))
        outputs = []
        for jobs in ("1", "4"):
            out = self.dir / f"results_{jobs}.csv"
            code, summary = self.call("learn", "--scenario", path, "--epsilon", "0.2", "--delta", "0.2",
                                      "--trials", "8", "--seed", "11", "--out", str(out), "--jobs", jobs,
                                      "--no-timing")
            self.assertEqual(code, 0)
            self.assertEqual(json.loads(summary)["trials"], 8)
            outputs.append(out.read_bytes())
        self.assertEqual(outputs[0], outputs[1])

    def test_learn_rejects_bad_epsilon(self):
        scenario = uniform_scenario(ConceptKind.KTERM_DNF, DnfFormula.from_signed([[1]], 2),
                                    [Assignment.from_string("10")])
        code, _ = self.call("learn", "--scenario", self.write("s.json", dump_scenario(scenario)),
                            "--epsilon", "0", "--delta", "0.2", "--trials", "1", "--out", str(self.dir / "r.csv"))
        self.assertEqual(code, 2)


if __name__ == "__main__":
    unittest.main()
