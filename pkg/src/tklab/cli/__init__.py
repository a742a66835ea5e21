"""``tklab`` command line: scenario runs, verification suites and suite listing."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..errors import InputError, InternalInconsistency
from .scenario import Overrides, build_config, exit_code, load_scenario, make_report, run_scenario_record
from .serialize import canonical_json
from .suites import get_suite, list_suites, run_suite


def _shared(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol-rank", type=float, help="relative singular-value cutoff for rank decisions")
    p.add_argument("--tol-angle", type=float, help="largest accepted principal angle against the oracle")
    p.add_argument("--trunc", type=int, help="oracle truncation order")
    p.add_argument("--out", type=Path, help="write the report here instead of standard output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tklab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario file")
    run.add_argument("scenario", type=Path)
    run.add_argument("--seed", type=int)
    run.add_argument("--trials", type=int)
    _shared(run)

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("suite", nargs="?")
    ver.add_argument("--suite", dest="suite_flag")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--trials", type=int)
    ver.add_argument("--only-trial", type=int, help="re-run a single trial index (from a repro record)")
    _shared(ver)

    ls = sub.add_parser("list-suites", help="list suite names and anchors")
    ls.add_argument("--out", type=Path)
    return parser


def _emit(payload, out: Path | None) -> None:
    text = canonical_json(payload) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _overrides(args) -> Overrides:
    for name in ("trials", "trunc"):
        v = getattr(args, name, None)
        if v is not None and v < 1:
            raise InputError(f"--{name} must be positive")
    return Overrides(args.tol_rank, args.tol_angle, args.trunc, getattr(args, "seed", None),
                     getattr(args, "trials", None))


def _verify(args) -> dict:
    name = args.suite_flag or args.suite
    if not name:
        raise InputError("a suite name is required")
    suite = get_suite(name)
    ov = _overrides(args)
    cfg = build_config(None, ov)
    trials = args.trials if args.trials is not None else suite.default_trials
    if args.only_trial is not None and args.only_trial < 0:
        raise InputError("--only-trial must be non-negative")
    out = run_suite(name, args.seed, trials, cfg, args.only_trial)
    echo = {"kind": "verify", "suite": name, "seed": args.seed, "trials": trials}
    if args.only_trial is not None:
        echo["onlyTrial"] = args.only_trial
    return make_report(echo, out.results, cfg, out.inconsistent)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "list-suites":
            _emit(list_suites(), args.out)
            return 0
        if args.command == "run":
            report = run_scenario_record(load_scenario(args.scenario), _overrides(args))
        else:
            report = _verify(args)
    except InputError as exc:
        print(f"tklab: input error: {exc}", file=sys.stderr)
        return 2
    except InternalInconsistency as exc:
        print(f"tklab: internal inconsistency: {exc}", file=sys.stderr)
        return 3
    _emit(report, args.out)
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
