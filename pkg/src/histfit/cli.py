"""Command-line entry point: ``histfit {search,compare,mutation-analysis,wht,census}``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from contextlib import contextmanager

from . import experiments
from .boolfn import parse_truth_table
from .census import census
from .criteria import Criterion
from .mutation import MutationKind
from .search import DEFAULT_BUDGET, SearchConfig, run_batch
from .spectrum import format_histogram, fwht, histogram, nonlinearity

SEED_ENV = "HISTFIT_SEED"

logger = logging.getLogger("histfit")


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _mutation(text: str) -> MutationKind:
    try:
        return MutationKind.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


@contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _write_jsonl(fh, records) -> None:
    for record in records:
        fh.write(json.dumps(record, sort_keys=True) + "\n")


def _seed(args) -> int:
    return args.seed if args.seed is not None else _default_seed()


def _target(args) -> int:
    if args.target is not None:
        return args.target
    try:
        return experiments.default_target(args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_search(args) -> int:
    try:
        config = SearchConfig(args.n, args.criterion, _target(args), args.budget, _seed(args))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    batch = run_batch(config, args.runs or experiments.default_runs(args.n), args.jobs)
    records = [experiments.run_record(i, r) for i, r in enumerate(batch.runs)]
    records.append(experiments.batch_summary_record(batch))
    with _output(args.out) as fh:
        _write_jsonl(fh, records)
    if args.out not in (None, "-"):
        print(experiments.format_summary_table([(config.criterion.value, batch)]))
    return 0


def cmd_compare(args) -> int:
    try:
        comparison = experiments.compare_criteria(
            args.n, _target(args), args.runs, args.budget, _seed(args),
            paired=not args.unpaired, jobs=args.jobs,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = comparison.report()
    if args.out not in (None, "-"):
        records = [experiments.run_record(i, r, name)
                   for name, batch in (("fit2", comparison.fit2), ("hist", comparison.hist))
                   for i, r in enumerate(batch.runs)]
        records.append({"record": "comparison", **report})
        with _output(args.out) as fh:
            _write_jsonl(fh, records)
    print(json.dumps(report, indent=2, sort_keys=True))
    print(experiments.format_summary_table([("LS-FIT2", comparison.fit2), ("LS-HISTFIT", comparison.hist)]))
    return 0


def cmd_mutation_analysis(args) -> int:
    mutations = args.mutation or [MutationKind.parse(m) for m in experiments.DEFAULT_MUTATIONS]
    try:
        rows = experiments.mutation_analysis(args.n, args.samples, args.neighbors, mutations, _seed(args))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    with _output(args.out) as fh:
        _write_jsonl(fh, [row.as_dict() for row in rows])
    if args.out not in (None, "-"):
        print(f"{'mutation':<12} {'spearman':>9} {'pearson':>9}")
        for row in rows:
            print(f"{row.mutation:<12} {row.spearman:9.4f} {row.pearson:9.4f}")
    return 0


def cmd_wht(args) -> int:
    try:
        table = parse_truth_table(args.table, args.format)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    spec = fwht(table)
    print(" ".join(str(int(c)) for c in spec.coeffs))
    print(f"nl: {nonlinearity(spec)}")
    print(f"histogram: {format_histogram(histogram(spec))}")
    return 0


def cmd_census(args) -> int:
    try:
        report = census(args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(json.dumps(report.as_dict(), indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="histfit", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def run_flags(p, criterion: bool):
        p.add_argument("--n", type=_positive, required=True, help="number of input variables")
        if criterion:
            p.add_argument("--criterion", choices=[c.value for c in Criterion], default="hist")
        p.add_argument("--target", type=int, help="target non-linearity (default: best known for N)")
        p.add_argument("--runs", type=_positive, help="number of runs (default 200; 25 for N=9)")
        p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="spectrum evaluations per run")
        p.add_argument("--seed", type=int, help=f"master seed (default: ${SEED_ENV} or 0)")
        p.add_argument("--jobs", type=_positive, default=1, help="worker processes")
        p.add_argument("--out", help="JSON-lines output file")

    p = sub.add_parser("search", help="run first-improvement local search")
    run_flags(p, criterion=True)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("compare", help="compare fit2 and hist local search")
    run_flags(p, criterion=False)
    p.add_argument("--unpaired", action="store_true", help="independent start tables per variant")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("mutation-analysis", help="parent/neighbour non-linearity correlations")
    p.add_argument("--n", type=_positive, default=experiments.DEFAULT_ANALYSIS_VARS)
    p.add_argument("--samples", type=_positive, default=experiments.DEFAULT_SAMPLES)
    p.add_argument("--neighbors", type=_positive, default=experiments.DEFAULT_NEIGHBORS)
    p.add_argument("--mutation", type=_mutation, action="append",
                   help="swap:k | shift | inversion | permutation (repeatable; default: all)")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_mutation_analysis)

    p = sub.add_parser("wht", help="print spectrum, non-linearity and histogram of a table")
    p.add_argument("--table", required=True)
    p.add_argument("--format", choices=["binary", "hex"], default="binary")
    p.set_defaults(func=cmd_wht)

    p = sub.add_parser("census", help="exhaustive non-linearity census (N <= 4)")
    p.add_argument("--n", type=_positive, required=True)
    p.set_defaults(func=cmd_census)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(f"{args.command}: {exc}")  # exits 2
    except Exception as exc:  # noqa: BLE001 - any runtime failure maps to exit 1
        logger.error("%s failed: %s", args.command, exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
