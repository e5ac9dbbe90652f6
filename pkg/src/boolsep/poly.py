"""Exact multilinear and univariate polynomials over the rationals.

Multilinear polynomials are keyed by variable-subset bitmasks.  Univariate
polynomials keep monomial coefficients and expose the binomial basis
sum_k c_k * C(x, k), whose coefficients are the forward differences of the
values at 0, 1, 2, ...
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import comb, factorial, lcm
from typing import Iterable, Mapping, Sequence

from .core import TruthTable, weight_profile
from .rational import Q, fmt_q

__all__ = [
    "MultilinearPoly",
    "UnivariatePoly",
    "SymmetrizationResult",
    "moebius",
    "moebius_coefficients",
    "degree",
    "interpolate",
    "lagrange_interpolate",
    "forward_differences",
    "symmetrize",
    "symmetrized_degree",
    "to_binomial_basis",
    "from_binomial_basis",
    "derivative_at_zero",
    "poly_derivative",
    "symmetric_lift",
    "parse_poly",
    "from_coefficients",
]


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class MultilinearPoly:
    """sum_S c_S * prod_{i in S} x_i with exact rational c_S.

    Zero coefficients are never stored, so equality of the coefficient maps
    is equality of the polynomials.
    """

    n: int
    coeffs: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for mask, c in self.coeffs.items():
            if mask < 0 or mask >> self.n:
                raise ValueError(f"monomial mask {mask} uses variables beyond n={self.n}")
            c = Q(c)
            if c:
                clean[mask] = c
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __eq__(self, other):
        if not isinstance(other, MultilinearPoly):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, tuple(self.coeffs.items())))

    def __call__(self, x: int) -> Fraction:
        return sum((c for s, c in self.coeffs.items() if s & x == s), Fraction(0))

    @property
    def degree(self) -> int:
        return max((_popcount(s) for s in self.coeffs), default=0)

    def is_symmetric(self) -> bool:
        by_size: dict[int, Fraction] = {}
        for s, c in self.coeffs.items():
            if by_size.setdefault(_popcount(s), c) != c:
                return False
        counts: dict[int, int] = {}
        for s in self.coeffs:
            counts[_popcount(s)] = counts.get(_popcount(s), 0) + 1
        return all(counts[k] == comb(self.n, k) for k in counts)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for s, c in sorted(self.coeffs.items(), key=lambda kv: (_popcount(kv[0]), kv[0])):
            mono = "*".join(f"x{i + 1}" for i in range(self.n) if s >> i & 1)
            if not mono:
                terms.append(fmt_q(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{fmt_q(c)}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"n": self.n, "coeffs": {str(s): fmt_q(c) for s, c in self.coeffs.items()}}


@dataclass(frozen=True)
class UnivariatePoly:
    """a_0 + a_1 x + ... + a_d x^d with exact rationals.

    The zero polynomial has an empty coefficient tuple and degree 0.
    """

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        cs = [Q(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def constant(cls, value) -> "UnivariatePoly":
        return cls((Q(value),))

    @classmethod
    def x(cls) -> "UnivariatePoly":
        return cls((Fraction(0), Fraction(1)))

    @property
    def degree(self) -> int:
        return max(len(self.coeffs) - 1, 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x) -> Fraction:
        x = Q(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def _lift(self, other) -> "UnivariatePoly":
        return other if isinstance(other, UnivariatePoly) else UnivariatePoly.constant(other)

    def __add__(self, other) -> "UnivariatePoly":
        other = self._lift(other)
        m = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (m - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (m - len(other.coeffs))
        return UnivariatePoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> "UnivariatePoly":
        return UnivariatePoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "UnivariatePoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "UnivariatePoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "UnivariatePoly":
        if not isinstance(other, UnivariatePoly):
            k = Q(other)
            return UnivariatePoly(tuple(c * k for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return UnivariatePoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UnivariatePoly(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, k) -> "UnivariatePoly":
        return self * (1 / Q(k))

    def compose(self, inner: "UnivariatePoly") -> "UnivariatePoly":
        """self(inner(x)), by Horner's scheme."""
        acc = UnivariatePoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def derivative(self, order: int = 1) -> "UnivariatePoly":
        if order < 0:
            raise ValueError("derivative order must be >= 0")
        cs = list(self.coeffs)
        for _ in range(order):
            cs = [i * c for i, c in enumerate(cs)][1:]
        return UnivariatePoly(tuple(cs))

    @cached_property
    def binomial(self) -> tuple[Fraction, ...]:
        """Coefficients c_0..c_d with self(x) = sum_k c_k * C(x, k)."""
        return tuple(forward_differences([self(k) for k in range(self.degree + 1)]))

    def format(self, basis: str = "monomial") -> str:
        if basis == "monomial":
            cs = self.coeffs or (Fraction(0),)
            return f"deg={self.degree} coeffs=" + ",".join(fmt_q(c) for c in cs)
        if basis == "binomial":
            return f"deg={self.degree} coeffs=" + ",".join(fmt_q(c) for c in self.binomial) + " basis=binomial"
        raise ValueError(f"unknown basis {basis!r}")

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if not mono:
                terms.append(fmt_q(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{fmt_q(c)}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def parse_poly(text: str) -> UnivariatePoly:
    """Inverse of :meth:`UnivariatePoly.format` for either basis."""
    fields = dict(part.split("=", 1) for part in text.split())
    if "coeffs" not in fields:
        raise ValueError(f"malformed polynomial line {text!r}")
    cs = [Q(c) for c in fields["coeffs"].split(",")]
    if fields.get("basis", "monomial") == "binomial":
        p = from_binomial_basis(cs)
    else:
        p = UnivariatePoly(tuple(cs))
    if "deg" in fields and int(fields["deg"]) != p.degree:
        raise ValueError(f"declared degree {fields['deg']} does not match coefficients")
    return p


@dataclass(frozen=True)
class SymmetrizationResult:
    poly: UnivariatePoly
    values: tuple[Fraction, ...]
    source_degree: int

    @property
    def degree(self) -> int:
        return self.poly.degree

    def to_json(self) -> dict:
        return {
            "values": [fmt_q(v) for v in self.values],
            "poly": self.poly.format(),
            "binomial": self.poly.format("binomial"),
            "expr": str(self.poly),
            "degree": self.degree,
            "source_degree": self.source_degree,
        }


def moebius_coefficients(values: Sequence[int]) -> list[int]:
    """In-place subset Moebius pass: c_S = sum_{T <= S} (-1)^{|S-T|} f(T)."""
    a = list(values)
    size = len(a)
    bit = 1
    while bit < size:
        for x in range(size):
            if x & bit:
                a[x] -= a[x ^ bit]
        bit <<= 1
    return a


def moebius(f: TruthTable) -> MultilinearPoly:
    coeffs = moebius_coefficients(f.values)
    return MultilinearPoly(f.n, {s: Fraction(c) for s, c in enumerate(coeffs) if c})


def degree(f: TruthTable) -> int:
    coeffs = moebius_coefficients(f.values)
    return max((_popcount(s) for s, c in enumerate(coeffs) if c), default=0)


def forward_differences(values: Sequence) -> list[Fraction]:
    """Delta^k v(0) for k = 0..len(values)-1."""
    row = [Q(v) for v in values]
    out = []
    while row:
        out.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    return out


def _falling(k: int) -> UnivariatePoly:
    """C(x, k) = x(x-1)...(x-k+1)/k! as a monomial-basis polynomial."""
    p = UnivariatePoly.constant(1)
    for j in range(k):
        p = p * UnivariatePoly((Fraction(-j), Fraction(1)))
    return p / factorial(k)


def from_binomial_basis(c: Sequence) -> UnivariatePoly:
    acc = UnivariatePoly()
    for k, ck in enumerate(c):
        ck = Q(ck)
        if ck:
            acc = acc + _falling(k) * ck
    return acc


def to_binomial_basis(p: UnivariatePoly | Sequence) -> list[Fraction]:
    """Binomial-basis coefficients of a polynomial, or of the interpolant of
    values given at 0, 1, ..., d."""
    if isinstance(p, UnivariatePoly):
        return list(p.binomial)
    return forward_differences(p)


def lagrange_interpolate(points: Sequence[tuple]) -> UnivariatePoly:
    xs = [Q(x) for x, _ in points]
    ys = [Q(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be pairwise distinct")
    acc = UnivariatePoly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        basis = UnivariatePoly.constant(1)
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * UnivariatePoly((-xj, Fraction(1)))
                denom *= xi - xj
        acc = acc + basis * (yi / denom)
    return acc


def interpolate(points: Sequence[tuple]) -> UnivariatePoly:
    """Unique polynomial of degree < len(points) through the given points.

    Nodes 0, 1, ..., m go through Newton's forward-difference form (which is
    the binomial basis); any other node set uses Lagrange's formula.
    """
    pts = sorted(((Q(x), Q(y)) for x, y in points), key=lambda p: p[0])
    if not pts:
        raise ValueError("no interpolation points")
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be pairwise distinct")
    if xs == list(range(len(xs))):
        return from_binomial_basis(forward_differences([y for _, y in pts]))
    return lagrange_interpolate(pts)


def symmetrize(f: TruthTable) -> SymmetrizationResult:
    """Univariate polynomial q with q(|x|) = average of f over the weight-|x| layer."""
    values = tuple(Fraction(ones, total) for ones, total in weight_profile(f))
    poly = from_binomial_basis(forward_differences(values))
    d = degree(f)
    if poly.degree > d:
        raise ArithmeticError(
            f"symmetrization has degree {poly.degree} > d(f) = {d} for {f}"
        )
    return SymmetrizationResult(poly, values, d)


_LCM_BINOM = {}


def symmetrized_degree(f: TruthTable) -> int:
    """Degree of the symmetrization, computed with integer differences only."""
    n = f.n
    if n not in _LCM_BINOM:
        _LCM_BINOM[n] = reduce(lcm, (comb(n, k) for k in range(n + 1)), 1)
    scale = _LCM_BINOM[n]
    row = [ones * (scale // total) for ones, total in weight_profile(f)]
    top = 0
    k = 0
    while row:
        if row[0]:
            top = k
        row = [b - a for a, b in zip(row, row[1:])]
        k += 1
    return top


def derivative_at_zero(c: Sequence) -> Fraction:
    """p'(0) from binomial coefficients, using d/dx C(x, k) at 0 = (-1)^(k+1)/k."""
    return sum(
        (Fraction((-1) ** (k + 1), k) * Q(ck) for k, ck in enumerate(c) if k >= 1),
        Fraction(0),
    )


def poly_derivative(p: UnivariatePoly, k: int = 1) -> UnivariatePoly:
    return p.derivative(k)


def symmetric_lift(p: UnivariatePoly, n: int) -> MultilinearPoly:
    """Replace each C(z, k) by the elementary symmetric polynomial P_k(x_1..x_n)."""
    if p.degree > n:
        raise ValueError(f"degree {p.degree} exceeds the variable count {n}")
    c = p.binomial
    coeffs = {}
    for s in range(1 << n):
        k = _popcount(s)
        if k < len(c) and c[k]:
            coeffs[s] = c[k]
    return MultilinearPoly(n, coeffs)


def from_coefficients(coeffs: Iterable) -> UnivariatePoly:
    return UnivariatePoly(tuple(Q(c) for c in coeffs))
