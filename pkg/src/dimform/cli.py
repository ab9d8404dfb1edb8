"""Command-line entry point: ``dimform analyze | cond | demo``."""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import report
from .conditioning import bound_experiment, random_saddle_blocks
from .form import ShapeError
from .scenario_file import parse_scenario
from .scenarios import SCENARIO_NAMES, builtin_scenario
from .syntax import FormSyntaxError
from .units import UnitError


def _emit(scenario, args) -> int:
    try:
        rep, code = report.build_report(scenario, pi_only=args.pi_only, group=args.group)
    except KeyError as err:
        print(f"error: {err.args[0]}", file=sys.stderr)
        return report.EXIT_PARSE
    sys.stdout.write(report.to_json(rep) if args.json else report.to_text(rep))
    if "error" in rep and not args.json:
        print(f"error: {rep['error']['message']}", file=sys.stderr)
    return code


def cmd_analyze(args) -> int:
    try:
        scenario = parse_scenario(args.file)
    except (FormSyntaxError, UnitError, ShapeError) as err:
        print(f"{args.file}: {err}", file=sys.stderr)
        return report.EXIT_PARSE
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return report.EXIT_PARSE
    return _emit(scenario, args)


def cmd_demo(args) -> int:
    return _emit(builtin_scenario(args.name), args)


def cmd_cond(args) -> int:
    if not (0 < args.eu_min <= args.eu_max):
        print("error: need 0 < --eu-min <= --eu-max", file=sys.stderr)
        return report.EXIT_PARSE
    try:
        blocks = random_saddle_blocks(args.n, args.m, seed=args.seed)
        grid = np.logspace(np.log10(args.eu_min), np.log10(args.eu_max), args.points)
        points = bound_experiment(blocks, grid)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return report.EXIT_PARSE
    except ArithmeticError as err:
        print(f"error: {err}", file=sys.stderr)
        return report.EXIT_NUMERIC
    lines = ["eu,cond2"] + [f"{eu!r},{k!r}" for eu, k in points]
    sys.stdout.write("\n".join(lines) + "\n")
    return report.EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dimform", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def report_flags(p):
        p.add_argument("--json", action="store_true", help="emit the JSON report")
        p.add_argument("--pi-only", action="store_true", help="stop after the Pi group table")
        p.add_argument("--group", help="analyze a single term group")

    p = sub.add_parser("analyze", help="analyze a scenario file")
    p.add_argument("file")
    report_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("demo", help="analyze a built-in scenario")
    p.add_argument("name", choices=SCENARIO_NAMES)
    report_flags(p)
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("cond", help="condition numbers of a random saddle-point matrix over Eu")
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--eu-min", type=float, default=1e-4)
    p.add_argument("--eu-max", type=float, default=1e2)
    p.add_argument("--points", type=int, default=13)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_cond)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
