"""Boolean functions as exact truth tables.

Inputs are bitmasks: variable x_i (1-based) is bit ``i - 1`` of the index, so
x_1 is the least significant bit.  A table on n variables is stored as one
Python integer whose bit ``x`` is f(x); this makes hex serialization and
whole-table operations cheap.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Callable, Iterable, Sequence

import numpy as np

__all__ = [
    "MAX_VARS",
    "TruthTable",
    "BlockFlip",
    "evaluate",
    "flip",
    "compose",
    "family",
    "FAMILIES",
    "weight_profile",
    "parse_tt",
    "format_tt",
    "all_functions",
]

MAX_VARS = 24

_TT_RE = re.compile(r"^\s*n\s*=\s*(\d+)\s+tt\s*=\s*([0-9a-fA-F]+)\s*$")


def _check_n(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError("variable count must be an int")
    if not 1 <= n <= MAX_VARS:
        raise ValueError(f"variable count {n} outside 1..{MAX_VARS}")


@dataclass(frozen=True)
class TruthTable:
    """A Boolean function f: {0,1}^n -> {0,1}.

    ``bits`` holds f(x) at bit position x.  Instances are immutable and
    hashable, so they can be used as dict keys and shared freely.
    """

    n: int
    bits: int

    def __post_init__(self):
        _check_n(self.n)
        if self.bits < 0 or self.bits >> self.size:
            raise ValueError(f"table does not fit in 2^{self.n} entries")

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def values(self) -> tuple[int, ...]:
        if self.n > 16:
            return tuple(int(v) for v in self.array)
        b = self.bits
        return tuple((b >> x) & 1 for x in range(self.size))

    @cached_property
    def array(self) -> np.ndarray:
        nbytes = max(1, self.size // 8)
        raw = np.frombuffer(self.bits.to_bytes(nbytes, "little"), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[: self.size]

    @classmethod
    def from_values(cls, values: Sequence[int] | np.ndarray) -> "TruthTable":
        size = len(values)
        n = size.bit_length() - 1
        if size < 2 or 1 << n != size:
            raise ValueError("table length must be a power of two >= 2")
        arr = np.asarray(values)
        if not np.all((arr == 0) | (arr == 1)):
            raise ValueError("table entries must be 0 or 1")
        packed = np.packbits(arr.astype(np.uint8), bitorder="little")
        return cls(n, int.from_bytes(packed.tobytes(), "little"))

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int], int]) -> "TruthTable":
        _check_n(n)
        bits = 0
        for x in range(1 << n):
            if fn(x):
                bits |= 1 << x
        return cls(n, bits)

    @classmethod
    def from_hex(cls, n: int, text: str) -> "TruthTable":
        return cls(n, int(text, 16))

    def hex(self) -> str:
        width = max(1, self.size // 4)
        return format(self.bits, "x").zfill(width)

    def __str__(self) -> str:
        return format_tt(self)

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def popcount(self) -> int:
        return self.bits.bit_count()

    def is_constant(self) -> bool:
        return self.bits == 0 or self.bits == (1 << self.size) - 1

    def complement(self) -> "TruthTable":
        return TruthTable(self.n, self.bits ^ ((1 << self.size) - 1))

    def restrict(self, var: int, value: int) -> "TruthTable":
        """Fix x_var = value; the result is on the remaining n-1 variables."""
        if self.n < 2:
            raise ValueError("cannot restrict a 1-variable function to 0 variables")
        if not 1 <= var <= self.n:
            raise ValueError(f"variable {var} out of range")
        low = var - 1
        vals = self.values
        out = []
        for y in range(1 << (self.n - 1)):
            lo = y & ((1 << low) - 1)
            hi = y >> low
            out.append(vals[lo | (value << low) | (hi << (low + 1))])
        return TruthTable.from_values(out)

    def shift_inputs(self, mask: int) -> "TruthTable":
        """The function x -> f(x XOR mask)."""
        vals = self.values
        return TruthTable.from_values([vals[x ^ mask] for x in range(self.size)])

    def is_symmetric(self) -> bool:
        seen: dict[int, int] = {}
        for x, v in enumerate(self.values):
            w = bin(x).count("1")
            if seen.setdefault(w, v) != v:
                return False
        return True


@dataclass(frozen=True)
class BlockFlip:
    """A block R of variables, stored as a bitmask over x_1..x_n."""

    block: int

    @classmethod
    def of(cls, *variables: int) -> "BlockFlip":
        mask = 0
        for i in variables:
            if i < 1:
                raise ValueError("variables are numbered from 1")
            mask |= 1 << (i - 1)
        return cls(mask)

    def variables(self) -> list[int]:
        return [i + 1 for i in range(self.block.bit_length()) if self.block >> i & 1]

    def apply(self, x: int) -> int:
        return x ^ self.block


def evaluate(f: TruthTable, x: int) -> int:
    if not 0 <= x < f.size:
        raise ValueError(f"input {x} out of range for n={f.n}")
    return (f.bits >> x) & 1


def flip(x: int, block: BlockFlip | int) -> int:
    """x^(R): complement exactly the bits of x that lie in R."""
    mask = block.block if isinstance(block, BlockFlip) else block
    return x ^ mask


def compose(outer: TruthTable, inner: TruthTable) -> TruthTable:
    """outer(inner(y_1..y_m), inner(y_m+1..y_2m), ...) on n*m variables."""
    n, m = outer.n, inner.n
    if n * m > MAX_VARS:
        raise ValueError(f"composition needs {n * m} variables, cap is {MAX_VARS}")
    y = np.arange(1 << (n * m), dtype=np.int64)
    block_mask = (1 << m) - 1
    inner_vals = inner.array.astype(np.int64)
    idx = np.zeros_like(y)
    for i in range(n):
        idx |= inner_vals[(y >> (i * m)) & block_mask] << i
    return TruthTable.from_values(outer.array[idx])


def _const(value: int) -> Callable[[int], TruthTable]:
    def build(n: int) -> TruthTable:
        _check_n(n)
        return TruthTable(n, ((1 << (1 << n)) - 1) if value else 0)

    return build


def _dictator(n: int, i: int = 1) -> TruthTable:
    if not 1 <= i <= n:
        raise ValueError(f"dictator index {i} outside 1..{n}")
    return TruthTable.from_function(n, lambda x: x >> (i - 1) & 1)


def _by_weight(rule: Callable[[int, int], bool]) -> Callable[[int], TruthTable]:
    def build(n: int) -> TruthTable:
        return TruthTable.from_function(n, lambda x: rule(bin(x).count("1"), n))

    return build


FAMILIES: dict[str, Callable[..., TruthTable]] = {
    "or": _by_weight(lambda w, n: w > 0),
    "and": _by_weight(lambda w, n: w == n),
    "xor": _by_weight(lambda w, n: w % 2 == 1),
    # 1 iff the bits are not all equal; the 1/3-approximant built in
    # approx.nae_approximant is centred on this reading.
    "nae": _by_weight(lambda w, n: 0 < w < n),
    "dictator": _dictator,
    "const0": _const(0),
    "const1": _const(1),
}


def family(name: str, n: int, i: int = 1) -> TruthTable:
    try:
        build = FAMILIES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; known: {sorted(FAMILIES)}") from None
    if name.lower() == "dictator":
        return build(n, i)
    return build(n)


def weight_profile(f: TruthTable) -> list[tuple[int, int]]:
    """(ones_k, C(n, k)) for each Hamming weight k = 0..n."""
    ones = [0] * (f.n + 1)
    for x, v in enumerate(f.values):
        if v:
            ones[bin(x).count("1")] += 1
    return [(ones[k], comb(f.n, k)) for k in range(f.n + 1)]


def parse_tt(text: str) -> TruthTable:
    """Parse the one-line text form ``n=<int> tt=<hex>``."""
    m = _TT_RE.match(text)
    if not m:
        raise ValueError(f"malformed truth table line {text!r}")
    n = int(m.group(1))
    _check_n(n)
    return TruthTable.from_hex(n, m.group(2))


def format_tt(f: TruthTable) -> str:
    return f"n={f.n} tt={f.hex()}"


def all_functions(n: int) -> Iterable[TruthTable]:
    _check_n(n)
    for bits in range(1 << (1 << n)):
        yield TruthTable(n, bits)
