"""Exhaustive sweep over all balanced functions of up to four inputs."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .boolfn import TruthTable
from .spectrum import fwht_rows, signs

MAX_CENSUS_VARS = 4
_CHUNK = 4096


@dataclass(frozen=True)
class CensusReport:
    n_vars: int
    total_balanced: int
    nl_distribution: dict[int, int]
    max_nl: int

    def as_dict(self) -> dict:
        return {
            "n_vars": self.n_vars,
            "total_balanced": self.total_balanced,
            "nl_distribution": {str(k): v for k, v in sorted(self.nl_distribution.items())},
            "max_nl": self.max_nl,
        }


def _check_size(n_vars: int) -> None:
    if not 1 <= n_vars <= MAX_CENSUS_VARS:
        raise ValueError(
            f"census is limited to 1 <= n_vars <= {MAX_CENSUS_VARS}; "
            f"n_vars={n_vars} would need C(2^{n_vars}, 2^{n_vars - 1}) tables"
        )


def _balanced_rows(n_vars: int) -> Iterator[np.ndarray]:
    size = 1 << n_vars
    for ones in itertools.combinations(range(size), size // 2):
        bits = np.zeros(size, dtype=np.uint8)
        bits[list(ones)] = 1
        yield bits


def enumerate_balanced(n_vars: int) -> Iterator[TruthTable]:
    """Yield every balanced table once, ordered lexicographically by the positions of its ones."""
    _check_size(n_vars)
    for bits in _balanced_rows(n_vars):
        yield TruthTable(bits, n_vars)


def census(n_vars: int) -> CensusReport:
    _check_size(n_vars)
    half = 1 << (n_vars - 1)
    dist: Counter[int] = Counter()
    total = 0
    rows = _balanced_rows(n_vars)
    while chunk := list(itertools.islice(rows, _CHUNK)):
        spectra = fwht_rows(signs(np.stack(chunk)))
        nls = half - np.abs(spectra).max(axis=1) // 2
        dist.update(nls.tolist())
        total += len(chunk)
    assert total == math.comb(2 * half, half)
    return CensusReport(n_vars, total, dict(dist), max(dist))
