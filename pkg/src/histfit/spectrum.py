"""Walsh-Hadamard spectra, non-linearity and magnitude histograms."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .boolfn import TruthTable

COEFF_DTYPE = np.int32


class WalshSpectrum:
    """Signed integer Walsh-Hadamard coefficients, ``coeffs[a] = W_f(a)``."""

    __slots__ = ("n_vars", "coeffs")

    def __init__(self, coeffs, n_vars: int | None = None):
        arr = np.array(coeffs, dtype=COEFF_DTYPE).ravel()
        if n_vars is None:
            n_vars = arr.size.bit_length() - 1
        if arr.size != 1 << n_vars:
            raise ValueError(f"expected {1 << n_vars} coefficients, got {arr.size}")
        arr.flags.writeable = False
        self.n_vars = n_vars
        self.coeffs = arr

    def __eq__(self, other) -> bool:
        if not isinstance(other, WalshSpectrum):
            return NotImplemented
        return self.n_vars == other.n_vars and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.n_vars, self.coeffs.tobytes()))

    def __repr__(self) -> str:
        return f"WalshSpectrum(n_vars={self.n_vars}, coeffs={self.coeffs.tolist()})"


class SpectrumHistogram(dict):
    """Map from absolute coefficient value to its number of occurrences."""

    def __init__(self, n_vars: int, counts):
        super().__init__(counts)
        self.n_vars = n_vars

    @property
    def max_value(self) -> int:
        return max(self)

    @property
    def max_count(self) -> int:
        """Occurrences of the largest absolute value (``#maxvalues``)."""
        return self[self.max_value]

    def descending(self) -> list[tuple[int, int]]:
        return sorted(self.items(), reverse=True)

    def __repr__(self) -> str:
        body = " ".join(f"{v}:{c}" for v, c in self.descending())
        return f"SpectrumHistogram(n_vars={self.n_vars}, {body})"


def signs(bits) -> np.ndarray:
    """Map 0/1 table entries to +1/-1."""
    return 1 - 2 * np.asarray(bits, dtype=COEFF_DTYPE)


def fwht_rows(values: np.ndarray) -> np.ndarray:
    """Butterfly Walsh-Hadamard transform along the last axis (returns a new array)."""
    a = np.array(values, dtype=COEFF_DTYPE)
    lead = a.shape[:-1]
    size = a.shape[-1]
    h = 1
    while h < size:
        a = a.reshape(*lead, size // (2 * h), 2, h)
        lo = a[..., 0, :]
        hi = a[..., 1, :]
        a = np.stack((lo + hi, lo - hi), axis=-2)
        h *= 2
    return a.reshape(*lead, size)


def naive_wht_rows(bits: np.ndarray) -> np.ndarray:
    """O(L^2) transform of each row of a 0/1 matrix: ``sum_x (-1)^f(x) (-1)^(a.x)``."""
    bits = np.atleast_2d(bits)
    return signs(bits) @ character_matrix(bits.shape[1].bit_length() - 1)


def naive_wht(t: TruthTable) -> WalshSpectrum:
    """Direct evaluation of the defining sum; the correctness oracle for :func:`fwht`."""
    return WalshSpectrum(naive_wht_rows(t.bits)[0], t.n_vars)


def fwht(t: TruthTable) -> WalshSpectrum:
    return WalshSpectrum(fwht_rows(signs(t.bits)), t.n_vars)


@lru_cache(maxsize=16)
def character_matrix(n_vars: int) -> np.ndarray:
    """``H[x, a] = (-1)^(a.x)``; row ``x`` is the spectrum change direction for entry ``x``."""
    size = 1 << n_vars
    idx = np.arange(size)
    and_ = idx[:, None] & idx[None, :]
    parity = np.zeros_like(and_)
    while and_.any():
        parity ^= and_ & 1
        and_ >>= 1
    h = (1 - 2 * parity).astype(COEFF_DTYPE)
    h.flags.writeable = False
    return h


def update_after_swap(spec: WalshSpectrum, t_before: TruthTable, i: int, j: int) -> WalshSpectrum:
    """Spectrum of ``t_before`` with entries ``i`` and ``j`` exchanged, in O(L).

    Flipping entry ``x`` changes every coefficient by ``-2 (-1)^f(x) (-1)^(a.x)``.
    """
    bits = t_before.bits
    if i == j or bits[i] == bits[j]:
        raise ValueError(f"invalid swap ({i}, {j}): positions must hold different values")
    h = character_matrix(t_before.n_vars)
    coeffs = spec.coeffs.copy()
    for x in (i, j):
        if bits[x]:
            coeffs += 2 * h[x]
        else:
            coeffs -= 2 * h[x]
    return WalshSpectrum(coeffs, spec.n_vars)


def max_abs(spec: WalshSpectrum) -> int:
    return int(np.abs(spec.coeffs).max())


def nonlinearity(spec: WalshSpectrum) -> int:
    return (1 << (spec.n_vars - 1)) - max_abs(spec) // 2


def histogram(spec: WalshSpectrum) -> SpectrumHistogram:
    counts = np.bincount(np.abs(spec.coeffs))
    values = np.flatnonzero(counts)
    return SpectrumHistogram(spec.n_vars, {int(v): int(counts[v]) for v in values})


def format_histogram(hist: SpectrumHistogram) -> str:
    return " ".join(f"{v}:{c}" for v, c in hist.descending())
