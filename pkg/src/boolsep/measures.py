"""Sensitivity, block sensitivity, decision-tree depth and the reduction to
a function that is fully sensitive at 0."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import TruthTable
from .poly import degree

__all__ = [
    "BsWitness",
    "MeasureSet",
    "Reduction",
    "BS_MAX_VARS",
    "D_MAX_VARS",
    "local_sensitivity",
    "sensitivity",
    "minimal_sensitive_blocks",
    "local_block_sensitivity",
    "block_sensitivity",
    "decision_tree_depth",
    "reduce_fully_sensitive",
    "is_fully_sensitive_at_zero",
    "measure_set",
]

BS_MAX_VARS = 16
D_MAX_VARS = 10


@dataclass(frozen=True)
class BsWitness:
    x: int
    blocks: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.blocks)

    def to_json(self) -> dict:
        return {"x": self.x, "blocks": list(self.blocks)}

    def check(self, f: TruthTable) -> bool:
        used = 0
        fx = f(self.x)
        for b in self.blocks:
            if not b or b & used or f(self.x ^ b) == fx:
                return False
            used |= b
        return True


@dataclass(frozen=True)
class MeasureSet:
    d: int
    s: int
    bs: int
    D: int
    bs_witness: BsWitness

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "s": self.s,
            "bs": self.bs,
            "D": self.D,
            "bs_witness": self.bs_witness.to_json(),
        }


@dataclass(frozen=True)
class Reduction:
    """Where a reduced function came from: f~(y) = f(x XOR sum_i y_i*S_i),
    complemented when f(x) = 1."""

    x: int
    blocks: tuple[int, ...]
    complemented: bool

    def to_json(self) -> dict:
        return {"x": self.x, "blocks": list(self.blocks), "complemented": self.complemented}


def local_sensitivity(f: TruthTable, x: int) -> int:
    fx = f(x)
    return sum(f(x ^ (1 << i)) != fx for i in range(f.n))


def sensitivity(f: TruthTable) -> tuple[int, int]:
    """(s(f), smallest input attaining it)."""
    vals = f.values
    n = f.n
    best, arg = -1, 0
    for x, fx in enumerate(vals):
        cnt = 0
        for i in range(n):
            if vals[x ^ (1 << i)] != fx:
                cnt += 1
        if cnt > best:
            best, arg = cnt, x
            if best == n:
                break
    return best, arg


@lru_cache(maxsize=None)
def _layer_masks(n: int) -> tuple[int, ...]:
    """M_i has bit y set iff bit i of y is clear, for y < 2^n."""
    size = 1 << n
    out = []
    for i in range(n):
        s = 1 << i
        unit = (1 << s) - 1
        period = s << 1
        m = 0
        for start in range(0, size, period):
            m |= unit << start
        out.append(m)
    return tuple(out)


def _xor_permute(bits: int, x: int, masks: tuple[int, ...]) -> int:
    """Table of y -> f(y XOR x), from the table of f."""
    i = 0
    while x:
        if x & 1:
            s = 1 << i
            m = masks[i]
            bits = ((bits & m) << s) | ((bits >> s) & m)
        x >>= 1
        i += 1
    return bits


def _minimal_block_set(f: TruthTable, x: int) -> int:
    """Bitset over block masks R: bit R set iff R is a minimal sensitive block at x."""
    n = f.n
    masks = _layer_masks(n)
    full = (1 << f.size) - 1
    g = _xor_permute(f.bits, x, masks)
    sens = g if not (f.bits >> x) & 1 else ~g & full
    # up[R]: some sensitive block is contained in R
    up = sens
    for i in range(n):
        up |= (up & masks[i]) << (1 << i)
    # strict[R]: some sensitive block is a proper subset of R
    strict = 0
    for i in range(n):
        strict |= (up & masks[i]) << (1 << i)
    return sens & ~strict


def minimal_sensitive_blocks(f: TruthTable, x: int) -> list[int]:
    """Sensitive blocks at x none of whose proper subsets is sensitive.

    Every sensitive block contains a minimal one (descend through sensitive
    proper subsets; the chain is finite).  Replacing each block of a
    disjoint family by a minimal block inside it keeps the family disjoint,
    so packing minimal blocks alone loses nothing.
    """
    bs = _minimal_block_set(f, x)
    out = []
    while bs:
        low = bs & -bs
        out.append(low.bit_length() - 1)
        bs ^= low
    return out


def _pack(blocks: list[int], full: int, floor: int) -> tuple[int, ...]:
    """Largest family of pairwise disjoint blocks with more than ``floor``
    members, lexicographically smallest among the largest; () if none."""
    best: list[tuple[int, ...]] = [()]
    limit = full.bit_count()
    target = [floor]
    chosen: list[int] = []
    nb = len(blocks)

    def dfs(start: int, used: int) -> bool:
        for j in range(start, nb):
            b = blocks[j]
            if b & used:
                continue
            room = (full & ~(used | b)).bit_count()
            if len(chosen) + 1 + min(room, nb - j - 1) <= target[0]:
                continue
            chosen.append(b)
            if len(chosen) > target[0]:
                target[0] = len(chosen)
                best[0] = tuple(chosen)
                if target[0] == limit:
                    return True
            if dfs(j + 1, used | b):
                return True
            chosen.pop()
        return False

    dfs(0, 0)
    return best[0]


def local_block_sensitivity(f: TruthTable, x: int) -> tuple[int, ...]:
    """A maximum disjoint family of sensitive blocks at x (lex-smallest)."""
    return _pack(minimal_sensitive_blocks(f, x), f.full_mask, 0)


def block_sensitivity(f: TruthTable) -> tuple[int, BsWitness]:
    """(bs(f), witness) by exact search over all inputs.

    The witness is the smallest x attaining bs(f), with the lexicographically
    smallest sorted tuple of minimal blocks among maximum packings at x.
    """
    if f.n > BS_MAX_VARS:
        raise ValueError(f"block sensitivity search is capped at n <= {BS_MAX_VARS}")
    if f.is_constant():
        return 0, BsWitness(0, ())
    full = f.full_mask
    best, witness = 0, BsWitness(0, ())
    for x in range(f.size):
        blocks = minimal_sensitive_blocks(f, x)
        if len(blocks) <= best:
            continue
        union = 0
        for b in blocks:
            union |= b
        if union.bit_count() <= best:
            continue
        packing = _pack(blocks, full, best)
        if len(packing) > best:
            best, witness = len(packing), BsWitness(x, packing)
            if best == f.n:
                break
    return best, witness


def decision_tree_depth(f: TruthTable) -> int:
    """Exact deterministic query complexity D(f).

    Subfunctions are keyed by their restriction pattern (fixed-variable mask,
    fixed values), so at most 3^n of them are ever solved.
    """
    n = f.n
    if n > D_MAX_VARS:
        raise ValueError(f"decision-tree search is capped at n <= {D_MAX_VARS}")
    vals = f.values
    full = f.full_mask
    memo: dict[int, tuple[int, int]] = {}

    def solve(mask: int, val: int) -> tuple[int, int]:
        # returns (depth, constant value or -1)
        if mask == full:
            return 0, vals[val]
        key = (mask << n) | val
        hit = memo.get(key)
        if hit is not None:
            return hit
        free = full & ~mask
        first = free & -free
        a = solve(mask | first, val)
        b = solve(mask | first, val | first)
        if a[0] == 0 and b[0] == 0 and a[1] == b[1]:
            out = (0, a[1])
        else:
            depth = 1 + max(a[0], b[0])
            rest = free ^ first
            while rest and depth > 1:
                bit = rest & -rest
                rest ^= bit
                a = solve(mask | bit, val)
                if a[0] + 1 >= depth:
                    continue
                b = solve(mask | bit, val | bit)
                depth = min(depth, 1 + max(a[0], b[0]))
            out = (depth, -1)
        memo[key] = out
        return out

    return solve(0, 0)[0]


def is_fully_sensitive_at_zero(f: TruthTable) -> bool:
    return f(0) == 0 and local_sensitivity(f, 0) == f.n


def reduce_fully_sensitive(f: TruthTable) -> tuple[TruthTable, Reduction]:
    """Substitute the bs-witness blocks to get a function on bs(f) variables
    that is fully sensitive at 0 and has degree at most d(f)."""
    if f.is_constant():
        raise ValueError("constant functions have no sensitive block to reduce to")
    _, w = block_sensitivity(f)
    flip_out = f(w.x)
    t = len(w.blocks)
    vals = f.values
    out = []
    for y in range(1 << t):
        z = w.x
        for i, b in enumerate(w.blocks):
            if y >> i & 1:
                z ^= b
        out.append(vals[z] ^ flip_out)
    return TruthTable.from_values(out), Reduction(w.x, w.blocks, bool(flip_out))


def measure_set(f: TruthTable) -> MeasureSet:
    bs, w = block_sensitivity(f)
    return MeasureSet(
        d=degree(f),
        s=sensitivity(f)[0],
        bs=bs,
        D=decision_tree_depth(f),
        bs_witness=w,
    )
