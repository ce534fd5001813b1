"""Experiment drivers: mutation/non-linearity correlation study and the
two-criterion local-search comparison."""

from __future__ import annotations

import zlib
from dataclasses import dataclass, replace

import numpy as np

from .boolfn import format_truth_table, random_balanced
from .criteria import Criterion
from .mutation import MutationKind
from .search import DEFAULT_BUDGET, BatchResult, RunResult, SearchConfig, derive_seed, run_batch
from .spectrum import fwht_rows, signs
from .stats import (
    Alternative,
    ContingencyTable2x2,
    UndefinedStatisticError,
    fisher_exact,
    mann_whitney_u,
    pearson,
    spearman,
)

# best-known balanced non-linearity for small N; 6..9 are the published search targets
DEFAULT_TARGETS = {1: 0, 2: 0, 3: 2, 4: 4, 5: 12, 6: 26, 7: 56, 8: 116, 9: 236}
DEFAULT_RUNS = 200
DEFAULT_RUNS_N9 = 25
DEFAULT_ANALYSIS_VARS = 8
DEFAULT_SAMPLES = 5000
DEFAULT_NEIGHBORS = 2
DEFAULT_MUTATIONS = ("swap:1", "swap:2", "swap:3", "shift", "inversion", "permutation")
PERCENTILES = (5, 25, 50, 75, 95)


def default_target(n_vars: int) -> int:
    try:
        return DEFAULT_TARGETS[n_vars]
    except KeyError:
        raise ValueError(f"no default target for n_vars={n_vars}; pass one explicitly") from None


def default_runs(n_vars: int) -> int:
    return DEFAULT_RUNS_N9 if n_vars == 9 else DEFAULT_RUNS


# -- mutation analysis ------------------------------------------------------


@dataclass(frozen=True)
class CorrelationRow:
    mutation: str
    spearman: float
    pearson: float
    n_pairs: int

    def as_dict(self) -> dict:
        return {"mutation": self.mutation, "spearman": self.spearman, "pearson": self.pearson,
                "n_pairs": self.n_pairs}


def _nls(tables) -> np.ndarray:
    spectra = fwht_rows(signs(np.stack([t.bits for t in tables])))
    half = spectra.shape[1] // 2
    return half - np.abs(spectra).max(axis=1) // 2


def mutation_study(kind: MutationKind, n_vars: int, n_samples: int, neighbors: int, seed: int):
    """Parent and neighbour non-linearities, one pair per generated neighbour."""
    rng = np.random.default_rng(derive_seed(seed, zlib.crc32(kind.label().encode())))
    parents, children = [], []
    for _ in range(n_samples):
        parent = random_balanced(n_vars, rng)
        parents.append(parent)
        children.extend(kind.apply(parent, rng) for _ in range(neighbors))
    parent_nl = np.repeat(_nls(parents), neighbors)
    return parent_nl, _nls(children)


def mutation_analysis(n_vars: int = DEFAULT_ANALYSIS_VARS, n_samples: int = DEFAULT_SAMPLES,
                      neighbors: int = DEFAULT_NEIGHBORS, mutations=DEFAULT_MUTATIONS,
                      seed: int = 0) -> list[CorrelationRow]:
    rows = []
    for spec in mutations:
        kind = spec if isinstance(spec, MutationKind) else MutationKind.parse(spec)
        x, y = mutation_study(kind, n_vars, n_samples, neighbors, seed)
        rows.append(CorrelationRow(kind.label(), spearman(x, y), pearson(x, y), int(x.size)))
    return rows


# -- criterion comparison ---------------------------------------------------


def run_record(index: int, result: RunResult, criterion: str | None = None) -> dict:
    table = result.final_table
    record = {
        "record": "run",
        "run_index": index,
        "seed": result.seed,
        "status": result.status.value,
        "evaluations": result.evaluations_used,
        "final_nl": result.final_nl,
        "final_table_hex": format_truth_table(table, "hex" if table.length >= 4 else "binary"),
    }
    if criterion is not None:
        record["criterion"] = criterion
    return record


def batch_summary_record(batch: BatchResult) -> dict:
    stats = batch.evaluation_summary
    evals = batch.successful_evaluations()
    return {
        "record": "summary",
        "criterion": batch.config.criterion.value,
        "n_vars": batch.config.n_vars,
        "target_nl": batch.config.target_nl,
        "eval_budget": batch.config.eval_budget,
        "runs": batch.n_runs,
        "successes": batch.successes,
        "success_percentage": batch.success_rate,
        "evaluations": stats.as_dict() if stats else None,
        "percentiles": ({str(p): float(v) for p, v in zip(PERCENTILES, np.percentile(evals, PERCENTILES))}
                        if evals else None),
    }


def _not_applicable(test: str, alternative: str, reason: str) -> dict:
    return {"test": test, "statistic": None, "p_value": None, "alternative": alternative,
            "status": "not-applicable", "reason": reason}


def significance_tests(fit2: BatchResult, hist: BatchResult) -> list[dict]:
    """Fisher exact on success counts and one-sided Mann-Whitney U (hist < fit2)."""
    if min(fit2.n_runs, hist.n_runs) < 2:
        reason = "fewer than two runs per variant"
        return [_not_applicable("fisher-exact", Alternative.TWO_SIDED.value, reason),
                _not_applicable("mann-whitney-u", Alternative.LESS.value, reason)]
    tests = []
    table = ContingencyTable2x2(fit2.successes, fit2.n_runs - fit2.successes,
                                hist.successes, hist.n_runs - hist.successes)
    try:
        tests.append(fisher_exact(table, Alternative.TWO_SIDED).as_dict() | {"status": "ok"})
    except UndefinedStatisticError as exc:
        tests.append(_not_applicable("fisher-exact", Alternative.TWO_SIDED.value, str(exc)))
    a, b = hist.successful_evaluations(), fit2.successful_evaluations()
    if len(a) < 2 or len(b) < 2:
        tests.append(_not_applicable("mann-whitney-u", Alternative.LESS.value,
                                     "fewer than two successful runs in a variant"))
    else:
        tests.append(mann_whitney_u(a, b, Alternative.LESS).as_dict() | {"status": "ok"})
    return tests


@dataclass
class Comparison:
    fit2: BatchResult
    hist: BatchResult
    paired: bool

    def report(self) -> dict:
        cfg = self.hist.config
        return {
            "n_vars": cfg.n_vars,
            "target_nl": cfg.target_nl,
            "eval_budget": cfg.eval_budget,
            "runs": self.hist.n_runs,
            "paired": self.paired,
            "variants": {
                "fit2": batch_summary_record(self.fit2),
                "hist": batch_summary_record(self.hist),
            },
            "tests": significance_tests(self.fit2, self.hist),
        }


def compare_criteria(n_vars: int, target_nl: int | None = None, n_runs: int | None = None,
                     eval_budget: int = DEFAULT_BUDGET, seed: int = 0, paired: bool = True,
                     jobs: int = 1) -> Comparison:
    """Run fit2 and hist batches; paired runs share start tables per run index."""
    base = SearchConfig(
        n_vars,
        Criterion.HIST,
        default_target(n_vars) if target_nl is None else target_nl,
        eval_budget,
        seed,
    )
    n_runs = default_runs(n_vars) if n_runs is None else n_runs
    batches = {}
    for stream, criterion in enumerate((Criterion.FIT2, Criterion.HIST)):
        master = seed if paired else derive_seed(seed, 0x5EED, stream)
        batches[criterion] = run_batch(replace(base, criterion=criterion, seed=master), n_runs, jobs)
    return Comparison(batches[Criterion.FIT2], batches[Criterion.HIST], paired)


def format_summary_table(rows: list[tuple[str, BatchResult]]) -> str:
    header = f"{'N':>2} {'variant':<10} {'success%':>8} {'mean':>10} {'std':>10} {'median':>9} {'min':>7} {'max':>7}"
    lines = [header]
    for name, batch in rows:
        s = batch.evaluation_summary
        stats = (f"{s.mean:10.2f} {s.std:10.2f} {s.median:9.1f} {s.min:7.0f} {s.max:7.0f}"
                 if s else f"{'-':>10} {'-':>10} {'-':>9} {'-':>7} {'-':>7}")
        lines.append(f"{batch.config.n_vars:>2} {name:<10} {batch.success_rate:8.1f} {stats}")
    return "\n".join(lines)
