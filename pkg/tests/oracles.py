"""Slow, obviously-correct reference implementations used only by tests."""

from fractions import Fraction
from itertools import permutations
from math import factorial


def bits_of(x, n):
    return [(x >> i) & 1 for i in range(n)]


def from_bits(bits):
    return sum(b << i for i, b in enumerate(bits))


def moebius_bruteforce(values, n):
    out = {}
    for s in range(1 << n):
        total = 0
        t = s
        while True:
            total += (-1) ** (bin(s).count("1") - bin(t).count("1")) * values[t]
            if t == 0:
                break
            t = (t - 1) & s
        if total:
            out[s] = total
    return out


def symmetrized_values_by_permutation(values, n):
    """Average of f over all variable permutations, read off at the canonical
    weight-k input 1^k 0^(n-k)."""
    out = []
    for k in range(n + 1):
        x = [1] * k + [0] * (n - k)
        total = 0
        for perm in permutations(range(n)):
            total += values[from_bits([x[p] for p in perm])]
        out.append(Fraction(total, factorial(n)))
    return out


def sensitive_blocks(values, n, x):
    return [b for b in range(1, 1 << n) if values[x ^ b] != values[x]]


def bs_bruteforce(values, n):
    """Max over x of the largest family of pairwise disjoint sensitive blocks,
    by trying every family."""
    best = 0
    for x in range(1 << n):
        blocks = sensitive_blocks(values, n, x)

        def grow(start, used, size):
            nonlocal best
            best = max(best, size)
            for j in range(start, len(blocks)):
                if not blocks[j] & used:
                    grow(j + 1, used | blocks[j], size + 1)

        grow(0, 0, 0)
    return best


def decision_tree_bruteforce(values, n):
    """Minimax over query orders on explicit sub-tables (dict input -> value)."""

    def depth(table, free):
        if len(set(table.values())) <= 1:
            return 0
        best = None
        for i in free:
            rest = [j for j in free if j != i]
            sub = [
                {x: v for x, v in table.items() if (x >> i) & 1 == b}
                for b in (0, 1)
            ]
            cost = 1 + max(depth(t, rest) for t in sub)
            if best is None or cost < best:
                best = cost
        return best

    return depth(dict(enumerate(values)), list(range(n)))
