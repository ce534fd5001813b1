"""First-improvement local search over the single-swap neighbourhood."""

from __future__ import annotations

import enum
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .boolfn import TruthTable, random_balanced
from .criteria import Criterion, improvements
from .spectrum import character_matrix, fwht_rows, signs
from .stats import Summary, summary

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 500_000

# neighbours are scored in vectorised blocks; the block grows within a pass
# because late passes rarely find an improvement early
_MIN_BLOCK = 8
_MAX_BLOCK = 1024


class Status(str, enum.Enum):
    TARGET_REACHED = "target_reached"
    LOCAL_OPTIMUM = "local_optimum"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class SearchConfig:
    n_vars: int
    criterion: Criterion = Criterion.HIST
    target_nl: int = 0
    eval_budget: int = DEFAULT_BUDGET
    seed: int = 0
    count_initial_evaluation: bool = True

    def __post_init__(self):
        object.__setattr__(self, "criterion", Criterion(self.criterion))
        if self.n_vars < 1:
            raise ValueError("n_vars must be >= 1")
        if self.eval_budget < 1:
            raise ValueError("eval_budget must be >= 1")
        if not 0 <= self.target_nl <= 1 << (self.n_vars - 1):
            raise ValueError(f"target_nl must lie in [0, {1 << (self.n_vars - 1)}]")


@dataclass(frozen=True)
class RunResult:
    status: Status
    evaluations_used: int
    final_nl: int
    final_table: TruthTable
    seed: int
    accepted_moves: int = 0

    @property
    def success(self) -> bool:
        return self.status is Status.TARGET_REACHED


@dataclass
class BatchResult:
    config: SearchConfig
    runs: list[RunResult] = field(default_factory=list)

    @property
    def n_runs(self) -> int:
        return len(self.runs)

    @property
    def successes(self) -> int:
        return sum(r.success for r in self.runs)

    @property
    def success_rate(self) -> float:
        """Percentage of runs that reached the target."""
        return 100.0 * self.successes / self.n_runs

    def successful_evaluations(self) -> list[int]:
        return [r.evaluations_used for r in self.runs if r.success]

    @property
    def evaluation_summary(self) -> Summary | None:
        evals = self.successful_evaluations()
        return summary(evals) if evals else None


def derive_seed(master: int, *keys: int) -> int:
    """Deterministic 64-bit seed for a sub-stream (e.g. a run index)."""
    seq = np.random.SeedSequence([master % 2**64, *keys])
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def _nl_from_max(n_vars: int, max_abs_value: int) -> int:
    return (1 << (n_vars - 1)) - max_abs_value // 2


def _frozen(arr: np.ndarray) -> np.ndarray:
    view = arr.view()
    view.flags.writeable = False
    return view


def first_improvement_ls(config: SearchConfig, start: TruthTable | None = None,
                         on_accept: Callable[[np.ndarray, np.ndarray], None] | None = None) -> RunResult:
    """Run one first-improvement local search.

    Each improvement step visits the (0-position, 1-position) swap pairs in a
    fresh random order and accepts the first strictly better neighbour. One
    evaluation is charged per neighbour spectrum (and for the start). Only
    neighbours up to and including the accepted one are charged, so scoring
    in blocks is indistinguishable from scoring one at a time.

    ``on_accept(bits, spectrum)`` is called after every accepted move with
    read-only views of the new incumbent.
    """
    n = config.n_vars
    rng = np.random.default_rng(config.seed)
    table = random_balanced(n, rng) if start is None else start
    if start is not None and not start.is_balanced():
        raise ValueError("start table must be balanced")
    bits = table.bits.copy()
    h2 = 2 * character_matrix(n)
    spectrum = fwht_rows(signs(bits))
    evals = 1 if config.count_initial_evaluation else 0
    budget = config.eval_budget
    criterion = config.criterion
    half = bits.size // 2
    accepted = 0

    def finish(status: Status) -> RunResult:
        nl = _nl_from_max(n, int(np.abs(spectrum).max()))
        return RunResult(status, evals, nl, TruthTable(bits, n), config.seed, accepted)

    if _nl_from_max(n, int(np.abs(spectrum).max())) >= config.target_nl:
        return finish(Status.TARGET_REACHED)

    while True:
        zeros = np.flatnonzero(bits == 0)
        ones = np.flatnonzero(bits == 1)
        order = rng.permutation(half * half)
        pos = 0
        block = _MIN_BLOCK
        improved = False
        while pos < order.size:
            remaining = budget - evals
            if remaining <= 0:
                return finish(Status.BUDGET_EXCEEDED)
            keys = order[pos:pos + min(block, remaining)]
            zi = zeros[keys // half]
            oj = ones[keys % half]
            # zi flips 0 -> 1, oj flips 1 -> 0
            candidates = spectrum + h2[oj] - h2[zi]
            mask = improvements(candidates, spectrum, criterion)
            if mask.any():
                k = int(mask.argmax())
                evals += k + 1
                bits[zi[k]], bits[oj[k]] = 1, 0
                spectrum = candidates[k]
                accepted += 1
                improved = True
                if on_accept is not None:
                    on_accept(_frozen(bits), _frozen(spectrum))
                break
            evals += keys.size
            pos += keys.size
            block = min(2 * block, _MAX_BLOCK)
        if not improved:
            return finish(Status.LOCAL_OPTIMUM)
        if _nl_from_max(n, int(np.abs(spectrum).max())) >= config.target_nl:
            return finish(Status.TARGET_REACHED)


def run_seed(config: SearchConfig, run_index: int) -> int:
    return derive_seed(config.seed, run_index)


def _run_indexed(args) -> tuple[int, RunResult]:
    config, index = args
    return index, first_improvement_ls(replace(config, seed=run_seed(config, index)))


def run_batch(config: SearchConfig, n_runs: int, jobs: int = 1) -> BatchResult:
    """Independent runs; run ``i`` uses ``derive_seed(config.seed, i)``."""
    if n_runs < 1:
        raise ValueError("n_runs must be >= 1")
    tasks = [(config, i) for i in range(n_runs)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = dict(pool.map(_run_indexed, tasks))
    else:
        results = {}
        for task in tasks:
            index, result = _run_indexed(task)
            results[index] = result
            logger.debug("run %d: %s after %d evaluations", index, result.status.value, result.evaluations_used)
    return BatchResult(config, [results[i] for i in range(n_runs)])
