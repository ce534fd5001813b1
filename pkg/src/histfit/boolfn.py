"""Truth-table representation of Boolean functions.

Index ``i`` of a table holds ``f(x)`` where ``x`` is the binary expansion of
``i`` (bit 0 of ``i`` is the first input variable).
"""

from __future__ import annotations

import numpy as np

_HEX_DIGITS = "0123456789abcdef"


class TruthTable:
    """Immutable value vector of an ``n_vars``-input Boolean function."""

    __slots__ = ("n_vars", "bits")

    def __init__(self, bits, n_vars: int | None = None):
        arr = np.array(bits, dtype=np.uint8).ravel()
        size = arr.size
        if size == 0 or size & (size - 1):
            raise ValueError(f"truth table length {size} is not a power of two")
        if n_vars is None:
            n_vars = size.bit_length() - 1
        elif size != 1 << n_vars:
            raise ValueError(f"expected {1 << n_vars} bits for n_vars={n_vars}, got {size}")
        if n_vars < 1:
            raise ValueError("n_vars must be >= 1")
        if arr.max() > 1:
            raise ValueError("truth table entries must be 0 or 1")
        arr.flags.writeable = False
        self.n_vars = n_vars
        self.bits = arr

    @property
    def length(self) -> int:
        return self.bits.size

    def is_balanced(self) -> bool:
        return 2 * hamming_weight(self) == self.length

    def __len__(self) -> int:
        return self.bits.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self.n_vars == other.n_vars and np.array_equal(self.bits, other.bits)

    def __hash__(self) -> int:
        return hash((self.n_vars, self.bits.tobytes()))

    def __repr__(self) -> str:
        text = format_truth_table(self, "binary")
        if len(text) > 64:
            text = text[:61] + "..."
        return f"TruthTable(n_vars={self.n_vars}, bits={text!r})"


def random_balanced(n_vars: int, rng: np.random.Generator) -> TruthTable:
    """Uniformly random table with exactly ``2**(n_vars-1)`` ones."""
    if n_vars < 1:
        raise ValueError("n_vars must be >= 1")
    half = 1 << (n_vars - 1)
    bits = np.zeros(2 * half, dtype=np.uint8)
    bits[half:] = 1
    rng.shuffle(bits)
    return TruthTable(bits, n_vars)


def hamming_weight(t: TruthTable) -> int:
    return int(np.count_nonzero(t.bits))


def hamming_distance(s: TruthTable, t: TruthTable) -> int:
    if s.length != t.length:
        raise ValueError(f"length mismatch: {s.length} vs {t.length}")
    return int(np.count_nonzero(s.bits != t.bits))


def parse_truth_table(text: str, format: str = "binary") -> TruthTable:
    """Parse a binary (``"0101"``) or hex (``"17"``) string.

    Hex digits carry 4 table entries each; index 0 sits in the most
    significant bit of the first digit.
    """
    text = text.strip().lower()
    if format == "hex":
        if text.startswith("0x"):
            text = text[2:]
        if not text or any(c not in _HEX_DIGITS for c in text):
            raise ValueError(f"invalid hex truth table: {text!r}")
        bits = [(int(c, 16) >> shift) & 1 for c in text for shift in (3, 2, 1, 0)]
    elif format == "binary":
        if not text or any(c not in "01" for c in text):
            raise ValueError(f"invalid binary truth table: {text!r}")
        bits = [int(c) for c in text]
    else:
        raise ValueError(f"unknown format {format!r}")
    return TruthTable(bits)


def format_truth_table(t: TruthTable, format: str = "binary") -> str:
    if format == "binary":
        return "".join("01"[b] for b in t.bits)
    if format == "hex":
        if t.length < 4:
            raise ValueError("hex format needs at least 4 entries (n_vars >= 2)")
        nibbles = t.bits.reshape(-1, 4) @ np.array([8, 4, 2, 1])
        return "".join(_HEX_DIGITS[v] for v in nibbles)
    raise ValueError(f"unknown format {format!r}")
