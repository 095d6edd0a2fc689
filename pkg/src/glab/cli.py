"""Command line front end.

    glab run scenario.json [--report out.json] [--jobs N] [--seed S] [--timing]
    glab suite NAME [--report out.json] [--seed S]
    glab suite --list

Exit status: 0 when every check passes, 1 when a check fails, 2 for
usage, parse and reference errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .scenario import SCHEMA, ScenarioError, __version__, run_scenario
from .suites import SUITES, UnknownSuite, run_suite

log = logging.getLogger("glab")


def _seed(s: str) -> int:
    v = int(s, 0)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="glab", description="Graded matrix algebras over finite fields.")
    ap.add_argument("--version", action="version", version=f"glab {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a JSON scenario")
    run.add_argument("scenario", type=Path)
    run.add_argument("--report", type=Path, help="write the JSON report here")
    run.add_argument("--jobs", type=int, default=1, help="run checks on this many threads")
    run.add_argument("--seed", type=_seed, help="override the scenario seed")
    run.add_argument("--timing", action="store_true", help="include per-check timings in the report")

    suite = sub.add_parser("suite", help="run a named property sweep")
    suite.add_argument("name", nargs="?")
    suite.add_argument("--list", action="store_true", help="list the suite names")
    suite.add_argument("--report", type=Path)
    suite.add_argument("--seed", type=_seed, default=0)
    suite.add_argument("--jobs", type=int, default=1, help="accepted for symmetry; suites run serially")
    return ap


def _cmd_run(args) -> int:
    try:
        report = run_scenario(args.scenario, seed=args.seed, jobs=max(1, args.jobs))
    except (ScenarioError, OSError, KeyError, TypeError, ValueError) as exc:
        print(f"glab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    for e in report.entries:
        line = f"[{e.verdict.upper():5}] #{e.index} {e.op}"
        if e.error:
            line += f": {e.error}"
        print(line)
    print(f"{sum(e.verdict == 'pass' for e in report.entries)}/{len(report.entries)} checks passed")
    if args.report:
        args.report.write_text(report.dumps(args.timing), encoding="utf-8")
    return report.exit_code


def _cmd_suite(args) -> int:
    if args.list:
        print("\n".join(SUITES))
        return 0
    if not args.name:
        print("glab: suite name required (see glab suite --list)", file=sys.stderr)
        return 2
    try:
        res = run_suite(args.name, seed=args.seed)
    except UnknownSuite as exc:
        print(f"glab: unknown suite {exc.args[0]!r}; known: {', '.join(SUITES)}", file=sys.stderr)
        return 2
    print(res.table())
    if args.report:
        doc = {"schema": SCHEMA, "version": __version__, "seed": args.seed, **res.to_json()}
        args.report.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return 0 if res.ok else 1


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    if args.command == "run":
        return _cmd_run(args)
    return _cmd_suite(args)


if __name__ == "__main__":
    sys.exit(main())
