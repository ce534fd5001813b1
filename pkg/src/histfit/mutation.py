"""Balancedness-preserving mutation operators."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boolfn import TruthTable


@dataclass(frozen=True)
class MutationKind:
    """One of ``swap`` (with ``k`` swaps), ``shift``, ``inversion``, ``permutation``."""

    name: str
    k: int = 1

    def __post_init__(self):
        if self.name not in ("swap", "shift", "inversion", "permutation"):
            raise ValueError(f"unknown mutation {self.name!r}")
        if self.k < 1:
            raise ValueError("swap count k must be >= 1")

    @classmethod
    def parse(cls, text: str) -> "MutationKind":
        """Parse ``swap:k``, ``swap``, ``shift``, ``inversion`` or ``permutation``."""
        name, _, arg = text.strip().lower().partition(":")
        if name == "swap":
            return cls("swap", int(arg) if arg else 1)
        if arg:
            raise ValueError(f"mutation {name!r} takes no argument")
        return cls(name)

    def label(self) -> str:
        return f"swap:{self.k}" if self.name == "swap" else self.name

    def apply(self, t: TruthTable, rng: np.random.Generator) -> TruthTable:
        if self.name == "swap":
            return mutate_swap(t, self.k, rng)[0]
        return _OPERATORS[self.name](t, rng)


# -- primitives on plain 0/1 arrays (any length) ------------------------------


def swap_positions(bits, pairs) -> np.ndarray:
    out = np.array(bits, dtype=np.uint8)
    for i, j in pairs:
        out[i], out[j] = out[j], out[i]
    return out


def rotate_right(bits, shift: int) -> np.ndarray:
    """Move every entry ``shift`` places right; entries falling off the end wrap to the front."""
    return np.roll(np.asarray(bits, dtype=np.uint8), shift)


def reverse_window(bits, i: int, j: int) -> np.ndarray:
    """Reverse entries ``i..j`` inclusive."""
    out = np.array(bits, dtype=np.uint8)
    out[i:j + 1] = out[i:j + 1][::-1]
    return out


def permute_window(bits, i: int, j: int, rng: np.random.Generator) -> np.ndarray:
    """Uniformly shuffle entries ``i..j`` inclusive."""
    out = np.array(bits, dtype=np.uint8)
    out[i:j + 1] = rng.permutation(out[i:j + 1])
    return out


# -- operators on balanced truth tables --------------------------------------


def _require_changeable(t: TruthTable) -> None:
    if t.length < 2 or t.bits.min() == t.bits.max():
        raise ValueError("mutation needs a table holding both 0 and 1")


def mutate_swap(t: TruthTable, k: int, rng: np.random.Generator):
    """Swap ``k`` disjoint (0, 1) position pairs.

    Positions touched by an earlier swap are excluded from later draws, so the
    result is at Hamming distance exactly ``2k`` from ``t``. Returns the new
    table and the swapped ``(zero_position, one_position)`` pairs.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if 2 * k > t.length:
        raise ValueError(f"2k={2 * k} exceeds table length {t.length}")
    zeros = np.flatnonzero(t.bits == 0)
    ones = np.flatnonzero(t.bits == 1)
    if k > min(zeros.size, ones.size):
        raise ValueError(f"table has too few 0/1 entries for {k} swaps")
    i_sel = rng.choice(zeros, size=k, replace=False)
    j_sel = rng.choice(ones, size=k, replace=False)
    pairs = [(int(i), int(j)) for i, j in zip(i_sel, j_sel)]
    return TruthTable(swap_positions(t.bits, pairs), t.n_vars), pairs


def mutate_cyclic_shift(t: TruthTable, rng: np.random.Generator) -> TruthTable:
    """Rotate right by ``l`` drawn from ``1..L-1``; re-draw ``l`` while the result equals ``t``."""
    _require_changeable(t)
    while True:
        bits = rotate_right(t.bits, int(rng.integers(1, t.length)))
        if not np.array_equal(bits, t.bits):
            return TruthTable(bits, t.n_vars)


def _draw_window(length: int, rng: np.random.Generator) -> tuple[int, int]:
    i, j = rng.choice(length, size=2, replace=False)
    return (int(i), int(j)) if i < j else (int(j), int(i))


def mutate_inversion(t: TruthTable, rng: np.random.Generator) -> TruthTable:
    """Reverse a random window ``i < j``; re-draw the window while the result equals ``t``."""
    _require_changeable(t)
    while True:
        bits = reverse_window(t.bits, *_draw_window(t.length, rng))
        if not np.array_equal(bits, t.bits):
            return TruthTable(bits, t.n_vars)


def mutate_permutation(t: TruthTable, rng: np.random.Generator) -> TruthTable:
    """Shuffle a random window ``i < j``; re-draw the window while the result equals ``t``."""
    _require_changeable(t)
    while True:
        bits = permute_window(t.bits, *_draw_window(t.length, rng), rng)
        if not np.array_equal(bits, t.bits):
            return TruthTable(bits, t.n_vars)


_OPERATORS = {
    "shift": mutate_cyclic_shift,
    "inversion": mutate_inversion,
    "permutation": mutate_permutation,
}
