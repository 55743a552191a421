"""Command line entry point: ``relscheme verify <suite-file>``."""

from __future__ import annotations

import argparse
import os
import sys

from .errors import RelSchemeError
from .report import Status
from .suite import SHIPPED, emit_report, load_suite, run_suite, shipped_corpus_path


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="relscheme", description="Finite verification of relative monoid constructions.")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run every check of a suite file")
    v.add_argument("suite", help="suite JSON file, or 'corpus' / 'acceptance' for a shipped suite")
    v.add_argument("--seed", type=int, default=None, help="override the suite seed")
    v.add_argument("--max-size", type=int, default=None, help="override the probe module-size bound")
    v.add_argument("--report", default=None, help="write the report here instead of stdout")
    v.add_argument("--format", choices=("human", "structured"), default="human")
    v.add_argument("--jobs", type=int, default=1, help="worker threads")
    v.add_argument("--no-validate", action="store_true", help="defer law validation of declarations to the checks")
    return p


def verify(args: argparse.Namespace) -> int:
    path = args.suite
    if args.suite in SHIPPED and not os.path.exists(args.suite):
        path = shipped_corpus_path(args.suite)
    try:
        S = load_suite(path, validate=False if args.no_validate else None)
    except OSError as e:
        print(f"relscheme: cannot read {path}: {e}", file=sys.stderr)
        return 2
    except RelSchemeError as e:
        print(f"relscheme: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    overrides = {}
    if args.seed is not None:
        S.seed = args.seed
        overrides["seed"] = args.seed
    if args.max_size is not None:
        overrides["max_module_size"] = args.max_size
    if overrides:
        S.budget = S.budget.but(**overrides)
        for c in S.checks:
            c.budget = c.budget.but(**overrides)
    reports = run_suite(S, jobs=args.jobs)
    text = emit_report(reports, args.format, S)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 1 if any(r.status in (Status.FAIL, Status.ERROR) for r in reports) else 0


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "verify":
        return verify(args)
    return 2  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
