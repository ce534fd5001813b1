"""Correlations, Mann-Whitney U, Fisher's exact test and summary statistics."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

EXACT_MWU_MAX_SIZE = 20


class UndefinedStatisticError(ValueError):
    """Raised when a statistic is undefined for the given data."""


class Alternative(str, enum.Enum):
    LESS = "less"
    GREATER = "greater"
    TWO_SIDED = "two-sided"


@dataclass(frozen=True)
class Summary:
    mean: float
    std: float
    median: float
    min: float
    max: float

    def as_dict(self) -> dict:
        return {"mean": self.mean, "std": self.std, "median": self.median, "min": self.min, "max": self.max}


@dataclass(frozen=True)
class TestResult:
    test: str
    statistic: float | None
    p_value: float
    alternative: str

    def as_dict(self) -> dict:
        stat = self.statistic
        if stat is not None and not math.isfinite(stat):
            stat = str(stat)  # keep the JSON strict
        return {"test": self.test, "statistic": stat, "p_value": self.p_value,
                "alternative": self.alternative}


@dataclass(frozen=True)
class ContingencyTable2x2:
    """Rows are groups, columns are (successes, failures)."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if min(self.a, self.b, self.c, self.d) < 0:
            raise ValueError("contingency counts must be non-negative")


def summary(values: Sequence[float]) -> Summary:
    """Mean, sample std (divisor n-1; 0 for a single value), median, min, max."""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ValueError("summary of an empty sample")
    std = float(arr.std(ddof=1)) if arr.size > 1 else 0.0
    return Summary(float(arr.mean()), std, float(np.median(arr)), float(arr.min()), float(arr.max()))


def _paired(x, y) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("samples must be one-dimensional with equal lengths")
    if x.size < 2:
        raise ValueError("need at least two observations")
    return x, y


def pearson(x, y) -> float:
    x, y = _paired(x, y)
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0 or syy == 0:
        raise UndefinedStatisticError("correlation undefined for a constant sample")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def average_ranks(values) -> np.ndarray:
    """1-based ranks with ties sharing the mean of their positions."""
    arr = np.asarray(values, dtype=float)
    order = np.argsort(arr, kind="mergesort")
    sorted_vals = arr[order]
    # boundaries of runs of equal values
    starts = np.r_[0, np.flatnonzero(np.diff(sorted_vals)) + 1]
    ends = np.r_[starts[1:], arr.size]
    mean_rank = (starts + ends + 1) / 2.0
    ranks = np.empty(arr.size)
    ranks[order] = np.repeat(mean_rank, ends - starts)
    return ranks


def spearman(x, y) -> float:
    x, y = _paired(x, y)
    return pearson(average_ranks(x), average_ranks(y))


def _normal_cdf(z: float) -> float:
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def _exact_u_distribution(n1: int, n2: int) -> list[int]:
    """Counts of rank arrangements giving each U value 0..n1*n2 (no ties)."""
    # counts[i][j][u]: arrangements of i values from a and j from b with statistic u
    prev = [[1] for _ in range(n2 + 1)]
    for i in range(1, n1 + 1):
        cur = [[1]]
        for j in range(1, n2 + 1):
            left = cur[j - 1]  # last element from b
            up = prev[j]  # last element from a, beating j elements of b
            size = i * j + 1
            row = [0] * size
            for u, c in enumerate(left):
                row[u] += c
            for u, c in enumerate(up):
                row[u + j] += c
            cur.append(row)
        prev = cur
    return prev[n2]


def mann_whitney_u(a, b, alternative: Alternative | str = Alternative.TWO_SIDED) -> TestResult:
    """U statistic of ``a`` with its p-value.

    ``less`` tests whether ``a`` is stochastically smaller than ``b``. Exact
    enumeration is used for tie-free samples of combined size <= 20; otherwise a
    normal approximation with tie and continuity corrections.
    """
    alternative = Alternative(alternative)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    n1, n2 = a.size, b.size
    if n1 == 0 or n2 == 0:
        raise ValueError("both samples must be non-empty")
    ranks = average_ranks(np.concatenate([a, b]))
    u = float(ranks[:n1].sum() - n1 * (n1 + 1) / 2)
    has_ties = np.unique(ranks).size < ranks.size

    if n1 + n2 <= EXACT_MWU_MAX_SIZE and not has_ties:
        dist = _exact_u_distribution(n1, n2)
        total = math.comb(n1 + n2, n1)
        k = int(round(u))
        p_less = sum(dist[: k + 1]) / total
        p_greater = sum(dist[k:]) / total
    else:
        n = n1 + n2
        _, tie_sizes = np.unique(ranks, return_counts=True)
        tie_term = float((tie_sizes**3 - tie_sizes).sum()) / (n * (n - 1))
        var = n1 * n2 / 12.0 * ((n + 1) - tie_term)
        mu = n1 * n2 / 2.0
        if var <= 0:
            p_less = p_greater = 1.0
        else:
            sd = math.sqrt(var)
            p_less = _normal_cdf((u + 0.5 - mu) / sd)
            p_greater = 1.0 - _normal_cdf((u - 0.5 - mu) / sd)

    if alternative is Alternative.LESS:
        p = p_less
    elif alternative is Alternative.GREATER:
        p = p_greater
    else:
        p = 2.0 * min(p_less, p_greater)
    return TestResult("mann-whitney-u", u, min(1.0, max(0.0, p)), alternative.value)


def fisher_exact(table: ContingencyTable2x2, alternative: Alternative | str = Alternative.TWO_SIDED) -> TestResult:
    """Fisher's exact test in exact integer arithmetic.

    ``less``/``greater`` refer to the odds ratio ``(a*d)/(b*c)``. The two-sided
    p-value sums all tables whose probability does not exceed the observed one.
    """
    alternative = Alternative(alternative)
    a, b, c, d = table.a, table.b, table.c, table.d
    row1, row2 = a + b, c + d
    col1 = a + c
    n = row1 + row2
    if row1 == 0 or row2 == 0 or col1 == 0 or col1 == n:
        raise UndefinedStatisticError("Fisher test undefined with an empty margin")
    lo, hi = max(0, col1 - row2), min(row1, col1)
    # weights share the denominator comb(n, col1)
    weights = {x: math.comb(row1, x) * math.comb(row2, col1 - x) for x in range(lo, hi + 1)}
    observed = weights[a]
    if alternative is Alternative.LESS:
        mass = sum(w for x, w in weights.items() if x <= a)
    elif alternative is Alternative.GREATER:
        mass = sum(w for x, w in weights.items() if x >= a)
    else:
        mass = sum(w for w in weights.values() if w <= observed)
    p = Fraction(mass, math.comb(n, col1))
    ad, bc = a * d, b * c
    odds = math.inf if bc == 0 and ad > 0 else (ad / bc if bc else float("nan"))
    return TestResult("fisher-exact", odds, float(min(p, 1)), alternative.value)
