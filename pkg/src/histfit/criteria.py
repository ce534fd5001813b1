"""Solution-quality criteria: non-linearity, the max-count penalised fitness,
and the spectrum-histogram comparator."""

from __future__ import annotations

import enum
from fractions import Fraction

import numpy as np

from .spectrum import WalshSpectrum, histogram, max_abs, nonlinearity


class Ordering(enum.Enum):
    PREFER_FIRST = "prefer_first"
    PREFER_SECOND = "prefer_second"
    TIE = "tie"


class Criterion(str, enum.Enum):
    FIT1 = "fit1"
    FIT2 = "fit2"
    HIST = "hist"


def fitness1(spec: WalshSpectrum) -> int:
    return nonlinearity(spec)


def fitness2(spec: WalshSpectrum) -> Fraction:
    """``nl + (L - #maxvalues) / L`` as an exact fraction."""
    size = 1 << spec.n_vars
    max_count = int(np.count_nonzero(np.abs(spec.coeffs) == max_abs(spec)))
    return nonlinearity(spec) + Fraction(size - max_count, size)


def _check_compatible(x: WalshSpectrum, y: WalshSpectrum) -> None:
    if x.n_vars != y.n_vars:
        raise ValueError(f"n_vars mismatch: {x.n_vars} vs {y.n_vars}")


def compare_histograms(x: WalshSpectrum, y: WalshSpectrum) -> Ordering:
    """Higher non-linearity wins; otherwise walk the magnitude histograms
    downward from the shared maximum and prefer the lower count at the
    first value where they differ."""
    _check_compatible(x, y)
    nl_x, nl_y = nonlinearity(x), nonlinearity(y)
    if nl_x != nl_y:
        return Ordering.PREFER_FIRST if nl_x > nl_y else Ordering.PREFER_SECOND
    hx, hy = histogram(x), histogram(y)
    # every coefficient shares the parity of 2^N, so step by 2 (4 for balanced N >= 2 is a subset)
    for value in range(max_abs(x), -1, -2):
        cx, cy = hx.get(value, 0), hy.get(value, 0)
        if cx != cy:
            return Ordering.PREFER_FIRST if cx < cy else Ordering.PREFER_SECOND
    return Ordering.TIE


def _compare_fitness(fx, fy) -> Ordering:
    if fx > fy:
        return Ordering.PREFER_FIRST
    if fx < fy:
        return Ordering.PREFER_SECOND
    return Ordering.TIE


def compare(x: WalshSpectrum, y: WalshSpectrum, criterion: Criterion | str) -> Ordering:
    criterion = Criterion(criterion)
    _check_compatible(x, y)
    if criterion is Criterion.HIST:
        return compare_histograms(x, y)
    score = fitness1 if criterion is Criterion.FIT1 else fitness2
    return _compare_fitness(score(x), score(y))


def is_strict_improvement(candidate: WalshSpectrum, incumbent: WalshSpectrum,
                          criterion: Criterion | str = Criterion.HIST) -> bool:
    """Ties are not improvements."""
    return compare(candidate, incumbent, criterion) is Ordering.PREFER_FIRST


# -- batched form used by the local search ---------------------------------


def _magnitude_counts(abs_coeffs: np.ndarray) -> np.ndarray:
    """Per-row bincount of absolute coefficients, columns ordered from the largest value down."""
    rows, size = abs_coeffs.shape
    width = size + 1
    flat = (abs_coeffs + width * np.arange(rows)[:, None]).ravel()
    counts = np.bincount(flat, minlength=rows * width).reshape(rows, width)
    return counts[:, ::-1]


def improvements(candidates: np.ndarray, incumbent: np.ndarray, criterion: Criterion | str) -> np.ndarray:
    """Boolean mask of candidate spectra (rows) strictly better than ``incumbent``.

    Agrees row-by-row with :func:`is_strict_improvement`.
    """
    criterion = Criterion(criterion)
    cand_abs = np.abs(candidates)
    inc_abs = np.abs(incumbent)
    cand_max = cand_abs.max(axis=1)
    inc_max = int(inc_abs.max())
    if criterion is Criterion.FIT1:
        return cand_max < inc_max
    if criterion is Criterion.FIT2:
        inc_count = int(np.count_nonzero(inc_abs == inc_max))
        cand_count = np.count_nonzero(cand_abs == cand_max[:, None], axis=1)
        return (cand_max < inc_max) | ((cand_max == inc_max) & (cand_count < inc_count))
    better = cand_max < inc_max
    tied = np.flatnonzero(cand_max == inc_max)
    if tied.size:
        diff = _magnitude_counts(cand_abs[tied]) - _magnitude_counts(inc_abs[None, :])
        nonzero = diff != 0
        first = nonzero.argmax(axis=1)
        decided = nonzero[np.arange(tied.size), first]
        better[tied] = decided & (diff[np.arange(tied.size), first] < 0)
    return better
