#!/usr/bin/env python3
"""
parapac 命令行入口
check / learn / reduce / kernelize 四个子命令；退出码 0 一致或成功，1 不一致，2 输入错误
"""

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

# 添加项目根目录到Python路径
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from loguru import logger  # noqa: E402

from core.concept import hypothesis_to_json  # noqa: E402
from core.config import config  # noqa: E402
from core.exceptions import InputError, ParapacException  # noqa: E402
from core.graph import ForbiddenFamily  # noqa: E402
from core.params import ConceptKind, lambda_backdoor  # noqa: E402
from modules.consistency import ConsistencyInstance, default_registry, kterm_dnf_kernelize  # noqa: E402
from modules.oracle import HiddenScenario  # noqa: E402
from modules.reductions import HittingSetInstance, hitting_set_to_fvs, hitting_set_to_kcnf  # noqa: E402
from modules.scheduler import ExperimentSpec, run_experiment  # noqa: E402
from utils.logger import setup_logger  # noqa: E402
from utils.parser import dump_instance, parse_instance  # noqa: E402

EXIT_OK, EXIT_INCONSISTENT, EXIT_INPUT = 0, 1, 2


def _expect(value, expected_type, what: str):
    if not isinstance(value, expected_type):
        raise InputError(f"输入文件不是{what}")
    return value


def run_check(args) -> int:
    """一致时在stdout输出规范JSON假设"""
    inst = _expect(parse_instance(args.input), ConsistencyInstance, "一致性实例")
    kind = ConceptKind.parse(args.kind)
    family = ForbiddenFamily.named(args.family) if args.family else inst.family
    inst = ConsistencyInstance(kind, inst.samples, args.k, size_bound=args.size_bound, family=family)
    outcome = default_registry().solve(inst)
    if not outcome.is_consistent:
        logger.info(f"{kind.value} k={args.k}: 不一致")
        return EXIT_INCONSISTENT
    print(hypothesis_to_json(outcome.hypothesis))
    logger.info(f"{kind.value} k={args.k}: 一致，假设 {outcome.hypothesis}")
    return EXIT_OK


def run_learn(args) -> int:
    scenario = _expect(parse_instance(args.scenario), HiddenScenario, "场景")
    spec = ExperimentSpec(scenario=scenario, epsilon=args.epsilon, delta=args.delta, trials=args.trials,
                          seed=config.seed if args.seed is None else args.seed, out=Path(args.out),
                          jobs=args.jobs or config.jobs, timing=not args.no_timing)
    summary = run_experiment(spec)
    print(json.dumps(summary, sort_keys=True, ensure_ascii=False))
    return EXIT_OK


def run_reduce(args) -> int:
    inst = _expect(parse_instance(args.input), HittingSetInstance, "Hitting Set 实例")
    reduced = hitting_set_to_kcnf(inst) if args.reduction == "hs-to-kcnf" else hitting_set_to_fvs(inst)
    Path(args.out).write_text(dump_instance(reduced), encoding="utf-8")
    return EXIT_OK


def run_kernelize(args) -> int:
    """对 k-term DNF 实例核化，写出核实例与规则轨迹"""
    inst = _expect(parse_instance(args.input), ConsistencyInstance, "一致性实例")
    if inst.kind != ConceptKind.KTERM_DNF:
        raise InputError(f"kernelize 只接受 kterm_dnf 实例，得到 {inst.kind.value}")
    k = inst.k if args.k is None else args.k
    ell, S = lambda_backdoor(inst.samples, 1)
    reduced, trace = kterm_dnf_kernelize(inst.samples, k, S)
    Path(args.out).write_text(dump_instance(ConsistencyInstance(ConceptKind.KTERM_DNF, reduced, k)), encoding="utf-8")
    if args.trace:
        data = {"S": sorted(S), "k": k, "columns": list(trace.columns), "entries": trace.to_dicts()}
        Path(args.trace).write_text(json.dumps(data, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    logger.info(f"核化: t {len(inst.samples)}→{len(reduced)}, n {inst.samples.n}→{reduced.n}, s={ell}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="parapac", description="参数化PAC学习工具包")
    parser.add_argument("--log-level", default=None, help="日志级别（默认取 PARAPAC_LOG_LEVEL）")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="一致性检查")
    check.add_argument("--kind", required=True, choices=[k.value for k in ConceptKind])
    check.add_argument("--k", required=True, type=int)
    check.add_argument("--input", required=True)
    check.add_argument("--family", default=None, help="hdeletion 的禁止子图族，如 K2,P3")
    check.add_argument("--size-bound", type=int, default=None, help="假设序列化长度上界")
    check.set_defaults(handler=run_check)

    learn = sub.add_parser("learn", help="PAC学习实验")
    learn.add_argument("--scenario", required=True)
    learn.add_argument("--epsilon", required=True, type=float)
    learn.add_argument("--delta", required=True, type=float)
    learn.add_argument("--trials", required=True, type=int)
    learn.add_argument("--seed", type=int, default=None, help="缺省时取 PARAPAC_SEED")
    learn.add_argument("--out", required=True)
    learn.add_argument("--jobs", type=int, default=None, help="并行试验数（默认为CPU数）")
    learn.add_argument("--no-timing", action="store_true", help="wall_time_ms 写为0，输出逐字节可复现")
    learn.set_defaults(handler=run_learn)

    reduce = sub.add_parser("reduce", help="Hitting Set 归约")
    reduce.add_argument("reduction", choices=["hs-to-kcnf", "hs-to-fvs"])
    reduce.add_argument("--input", required=True)
    reduce.add_argument("--out", required=True)
    reduce.set_defaults(handler=run_reduce)

    kernelize = sub.add_parser("kernelize", help="k-term DNF 核化")
    kernelize.add_argument("--input", required=True)
    kernelize.add_argument("--out", required=True)
    kernelize.add_argument("--trace", default=None)
    kernelize.add_argument("--k", type=int, default=None, help="覆盖文件头中的k")
    kernelize.set_defaults(handler=run_kernelize)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logger(args.log_level)
    try:
        return args.handler(args)
    except ParapacException as e:
        logger.error(str(e))
        return EXIT_INPUT
    except ValueError as e:
        # pydantic 校验错误
        logger.error(f"参数无效: {e}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
