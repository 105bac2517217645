import asyncio
import csv
import json
import math
import os
import sys
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

import numpy as np
from pydantic import ValidationError

# 添加父目录到路径
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from core.config import config
from core.exceptions import InputError
from core.formula import CnfFormula, DnfFormula
from core.params import ConceptKind
from core.sample import Assignment, SampleSet
from generators import random_samples
from modules.consistency import agrees, kterm_dnf_consistency
from modules.consistency.builtin import KCnfChecker, KTermDnfChecker
from modules.metalearn import (ConsistencyLearner, LearnerConfig, consistency_via_pac_learner, log_hyp_count,
                               pac_learn_via_consistency, required_samples, scenario_oracle)
from modules.oracle import RandomSource, exact_error, uniform_scenario
from modules.scheduler import CSV_HEADER, ExperimentSpec, ResultRow, TrialScheduler, run_experiment

FOUR = [Assignment.from_string(s) for s in ("00", "01", "10", "11")]


class TestSampleComplexity(unittest.TestCase):
    """假设空间大小与样本复杂度测试"""

    def test_log_hyp_count(self):
        self.assertEqual(log_hyp_count(ConceptKind.KCNF, 2, 1), 4.0)
        self.assertEqual(log_hyp_count(ConceptKind.KDNF, 3, 2), 18.0)
        self.assertEqual(log_hyp_count(ConceptKind.KTERM_DNF, 5, 0), 0.0)
        self.assertAlmostEqual(log_hyp_count(ConceptKind.KCLAUSE_CNF, 3, 2), 6 * math.log2(3))
        self.assertAlmostEqual(log_hyp_count(ConceptKind.FVS, 5, 1), math.log2(6))
        self.assertAlmostEqual(log_hyp_count(ConceptKind.HDELETION, 3, 9), 3.0)
        with self.assertRaises(InputError):
            log_hyp_count(ConceptKind.KCNF, 0, 1)

    def test_required_samples(self):
        self.assertEqual(required_samples(0, 1, 1), 1)
        self.assertEqual(required_samples(4, 0.5, 0.5), 10)
        self.assertEqual(required_samples(log_hyp_count(ConceptKind.KCNF, 8, 2), 0.2, 0.2), 469)
        with self.assertRaises(InputError):
            required_samples(4, 0, 0.5)
        with self.assertRaises(InputError):
            required_samples(-1, 0.5, 0.5)

    def test_required_samples_monotone(self):
        for log_hyp in (0.0, 3.5, 40.0):
            previous = None
            for epsilon in (0.9, 0.5, 0.2, 0.05):
                t = required_samples(log_hyp, epsilon, 0.3)
                if previous is not None:
                    self.assertGreaterEqual(t, previous)
                previous = t
            self.assertGreaterEqual(required_samples(log_hyp, 0.3, 0.1), required_samples(log_hyp, 0.3, 0.5))


class TestPacLearner(unittest.TestCase):
    """一致性检查 → PAC学习器测试"""

    def test_config_validation(self):
        scenario = uniform_scenario(ConceptKind.KCNF, CnfFormula.from_signed([[1]], 2), FOUR)
        with self.assertRaises(ValidationError):
            LearnerConfig(n=2, epsilon=0, delta=0.5, params=scenario.params)
        with self.assertRaises(ValidationError):
            LearnerConfig(n=2, epsilon=0.5, delta=1.5, params=scenario.params)
        with self.assertRaises(ValidationError):
            LearnerConfig(n=2, epsilon=0.5, delta=0.5, params=scenario.params, seed=-1)

    def test_point_mass(self):
        scenario = uniform_scenario(ConceptKind.KCNF, CnfFormula.from_signed([[1, 2]], 3),
                                    [Assignment.from_string("011")])
        cfg = LearnerConfig(n=3, epsilon=0.5, delta=0.5, params=scenario.params)
        record = pac_learn_via_consistency(cfg, scenario_oracle(scenario, RandomSource(0)), KCnfChecker(), scenario)
        self.assertEqual(record.samples_used, required_samples(log_hyp_count(ConceptKind.KCNF, 3, 2), 0.5, 0.5))
        self.assertEqual(record.exact_err, 0.0)

    def test_uniform_conjunction(self):
        conjunction = DnfFormula.from_signed([[1, -2]], 2)
        scenario = uniform_scenario(ConceptKind.KTERM_DNF, conjunction, FOUR)
        learner = ConsistencyLearner(KTermDnfChecker())
        cfg = LearnerConfig(n=2, epsilon=0.1, delta=0.1, params=scenario.params)
        record = learner(cfg, scenario_oracle(scenario, RandomSource(4)))
        # 122 次抽样覆盖全部4个点，因此误差为0
        self.assertEqual(exact_error(record.hypothesis, scenario), 0.0)
        self.assertEqual(learner.kind, ConceptKind.KTERM_DNF)


class TestConsistencyViaLearner(unittest.TestCase):
    """PAC学习器 → 随机化一致性判定测试"""

    def setUp(self):
        self.learner = ConsistencyLearner(KTermDnfChecker())

    def test_single_sample(self):
        samples = SampleSet.from_pairs([("101", 1)])
        outcome = consistency_via_pac_learner(samples, self.learner, 0.1, 1)
        self.assertTrue(outcome.is_consistent)
        self.assertTrue(agrees(outcome.hypothesis, samples))

    def test_empty_samples(self):
        outcome = consistency_via_pac_learner(SampleSet([], 2), self.learner, 0.1, 1)
        self.assertEqual(outcome.hypothesis, DnfFormula((), 2))

    def test_inconsistent(self):
        samples = SampleSet.from_pairs([("10", 1), ("01", 1), ("00", 0)])
        self.assertFalse(consistency_via_pac_learner(samples, self.learner, 0.1, 1).is_consistent)

    def test_matches_direct_checker(self):
        rng = np.random.default_rng(2)
        for i in range(40):
            samples = random_samples(rng, int(rng.integers(1, 5)), int(rng.integers(1, 6)))
            k = int(rng.integers(0, 3))
            direct = kterm_dnf_consistency(samples, k)
            bridged = consistency_via_pac_learner(samples, self.learner, 0.05, k, seed=i)
            if bridged.is_consistent:
                self.assertTrue(agrees(bridged.hypothesis, samples))
                self.assertTrue(direct.is_consistent)
            if not direct.is_consistent:
                self.assertFalse(bridged.is_consistent)

    def test_low_error_implies_consistent(self):
        """均匀分布下误差小于 1/(t+1) 的假设与全部样本一致"""
        samples = SampleSet.from_pairs([("00", 0), ("01", 1), ("11", 1)])
        scenario = uniform_scenario(ConceptKind.KTERM_DNF, DnfFormula.from_signed([[2]], 2), samples.assignments)
        for formula in (DnfFormula.from_signed([[2]], 2), DnfFormula.from_signed([[1]], 2), DnfFormula((), 2)):
            err = exact_error(formula, scenario)
            self.assertEqual(err < 1 / (len(samples) + 1), agrees(formula, samples))


class TestScheduler(unittest.TestCase):
    """试验调度与结果文件测试"""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)
        self.scenario = uniform_scenario(ConceptKind.KTERM_DNF, DnfFormula.from_signed([[1, -2]], 2), FOUR)

    def tearDown(self):
        self.tmp.cleanup()

    def spec(self, name: str, **kwargs) -> ExperimentSpec:
        options = dict(scenario=self.scenario, epsilon=0.2, delta=0.2, trials=6, seed=3, out=self.dir / name,
                       jobs=2, timing=False)
        options.update(kwargs)
        return ExperimentSpec(**options)

    def test_result_row_format(self):
        row = ResultRow(0, 5, 10, 1.23456, 0.25, True)
        self.assertEqual(row.to_csv(), ["0", "5", "10", "1.235", "0.25", "1"])
        self.assertEqual(ResultRow(1, 5, 10, 0.0, float("nan"), False).to_csv()[4], "nan")

    def test_run_experiment_writes_files(self):
        spec = self.spec("results.csv")
        summary = run_experiment(spec)
        with open(spec.out, newline="", encoding="utf-8") as f:
            rows = list(csv.reader(f))
        self.assertEqual(rows[0], CSV_HEADER)
        self.assertEqual([r[0] for r in rows[1:]], [str(i) for i in range(6)])
        self.assertTrue(all(r[3] == "0.000" for r in rows[1:]))
        self.assertNotIn(b"\r\n", spec.out.read_bytes())
        self.assertEqual(json.loads(spec.summary_path.read_text(encoding="utf-8")), summary)
        self.assertEqual(summary["trials"], 6)
        self.assertEqual(summary["errors"], 0)

    def test_jobs_do_not_change_results(self):
        one = self.spec("one.csv", jobs=1)
        many = self.spec("many.csv", jobs=4)
        run_experiment(one)
        run_experiment(many)
        self.assertEqual(one.out.read_bytes(), many.out.read_bytes())

    def test_unrealizable_trials_fail(self):
        disjunction = uniform_scenario(ConceptKind.KDNF, DnfFormula.from_signed([[1], [2]], 2), FOUR)
        spec = self.spec("fail.csv", scenario=disjunction, epsilon=0.1, delta=0.1, trials=3)
        scheduler = TrialScheduler(spec, checker=KTermDnfChecker())
        rows = asyncio.run(scheduler.run_all())
        self.assertTrue(all(math.isnan(r.exact_err) and not r.success for r in rows))
        self.assertEqual(scheduler.failed_trials(), [0, 1, 2])
        self.assertEqual(rows[0].samples_used, scheduler.samples_per_trial)

    def test_search_guard_trials_fail(self):
        scenario = uniform_scenario(ConceptKind.KTERM_DNF, DnfFormula.from_signed([[1]], 2),
                                    [Assignment.from_string(s) for s in ("10", "11")])
        spec = self.spec("guard.csv", scenario=scenario, trials=3)
        with patch.object(config, "term_search_guard", 1):
            summary = run_experiment(spec)
        with open(spec.out, newline="", encoding="utf-8") as f:
            rows = list(csv.reader(f))[1:]
        self.assertEqual(len(rows), 3)
        self.assertTrue(all(r[4] == "nan" and r[5] == "0" for r in rows))
        self.assertEqual(summary["errors"], 3)

    def test_spec_validation(self):
        with self.assertRaises(ValidationError):
            self.spec("bad.csv", trials=0)
        with self.assertRaises(ValidationError):
            self.spec("bad.csv", epsilon=1.5)
        self.assertEqual(self.spec("r.csv").summary_path.name, "r.json")


if __name__ == "__main__":
    unittest.main()
