"""Approximate degree and the Chebyshev 1/3-approximant of NAE_n."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .core import TruthTable, weight_profile
from .lp import LinearProgram, solve
from .poly import MultilinearPoly, UnivariatePoly, from_binomial_basis
from .rational import Q, ceil_sqrt, fmt_q

__all__ = [
    "APPROX_MAX_VARS",
    "ApproxDegreeResult",
    "ChebyshevApproximant",
    "approx_degree",
    "approx_degree_symmetric",
    "chebyshev_eval",
    "chebyshev_poly",
    "chebyshev_derivs_at_one",
    "nae_condition",
    "nae_approximant",
    "optimal_c",
    "NAE_ASYMPTOTE",
]

APPROX_MAX_VARS = 8
DEFAULT_EPS = Fraction(1, 3)
# positive root of 2x + (2/3)x^2 = 1
NAE_ASYMPTOTE = (math.sqrt(15) - 3) / 2


@dataclass(frozen=True)
class ApproxDegreeResult:
    epsilon: Fraction
    degree: int
    witness_poly: MultilinearPoly | UnivariatePoly
    infeasibility_note: str

    def to_json(self) -> dict:
        w = self.witness_poly
        if isinstance(w, UnivariatePoly):
            witness = {"univariate": w.format(), "binomial": w.format("binomial")}
        else:
            witness = {"multilinear": str(w)}
        return {
            "epsilon": fmt_q(self.epsilon),
            "degree": self.degree,
            "witness": witness,
            "infeasibility_note": self.infeasibility_note,
        }


def _check_eps(eps) -> Fraction:
    eps = Q(eps)
    if not 0 < eps < Fraction(1, 2):
        raise ValueError(f"epsilon must lie in (0, 1/2), got {fmt_q(eps)}")
    return eps


def _monomials(n: int, d: int) -> list[int]:
    return [s for s in range(1 << n) if bin(s).count("1") <= d]


def _band_lp(names: list[str], rows: list[list[int]], targets: list[int | Fraction], eps: Fraction) -> LinearProgram:
    lp = LinearProgram(names)
    for row, t in zip(rows, targets):
        lp.add(row, "<=", t + eps)
        lp.add(row, ">=", t - eps)
    return lp


def approx_degree(f: TruthTable, eps=DEFAULT_EPS) -> ApproxDegreeResult:
    """Smallest d admitting a degree-<=d multilinear polynomial within eps of f
    on the whole cube, by ascending exact LP feasibility checks."""
    eps = _check_eps(eps)
    n = f.n
    if n > APPROX_MAX_VARS:
        raise ValueError(f"general approximate-degree LP is capped at n <= {APPROX_MAX_VARS}")
    vals = f.values
    note = "degree 0 is the smallest possible"
    for d in range(n + 1):
        monos = _monomials(n, d)
        names = [f"c{s}" for s in monos]
        rows = [[1 if s & x == s else 0 for s in monos] for x in range(f.size)]
        out = solve(_band_lp(names, rows, list(vals), eps))
        if out.optimal:
            coeffs = {s: out.vertex[name] for s, name in zip(monos, names)}
            return ApproxDegreeResult(eps, d, MultilinearPoly(n, coeffs), note)
        note = f"degree {d} infeasible (phase-1 residual {fmt_q(out.phase1_value)})"
    raise ArithmeticError("degree-n LP must be feasible; solver disagrees")


def _symmetric_values(f: TruthTable) -> list[int]:
    if not f.is_symmetric():
        raise ValueError("approx_degree_symmetric needs a symmetric function")
    return [1 if ones else 0 for ones, _ in weight_profile(f)]


def approx_degree_symmetric(f: TruthTable, eps=DEFAULT_EPS) -> ApproxDegreeResult:
    """Fast path for symmetric f: LP over univariate q in the binomial basis,
    |q(k) - f_k| <= eps for k = 0..n."""
    eps = _check_eps(eps)
    fk = _symmetric_values(f)
    n = f.n
    note = "degree 0 is the smallest possible"
    for d in range(n + 1):
        names = [f"b{j}" for j in range(d + 1)]
        rows = [[comb(k, j) for j in range(d + 1)] for k in range(n + 1)]
        out = solve(_band_lp(names, rows, fk, eps))
        if out.optimal:
            q = from_binomial_basis([out.vertex[name] for name in names])
            return ApproxDegreeResult(eps, d, q, note)
        note = f"degree {d} infeasible (phase-1 residual {fmt_q(out.phase1_value)})"
    raise ArithmeticError("degree-n LP must be feasible; solver disagrees")


def chebyshev_eval(k: int, x) -> Fraction:
    """T_k(x) by the three-term recurrence; exact for every rational x."""
    if k < 0:
        raise ValueError("Chebyshev index must be >= 0")
    x = Q(x)
    prev, cur = Fraction(1), x
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, 2 * x * cur - prev
    return cur


@lru_cache(maxsize=None)
def chebyshev_poly(k: int) -> UnivariatePoly:
    if k < 0:
        raise ValueError("Chebyshev index must be >= 0")
    if k == 0:
        return UnivariatePoly.constant(1)
    if k == 1:
        return UnivariatePoly.x()
    two_x = UnivariatePoly((Fraction(0), Fraction(2)))
    return two_x * chebyshev_poly(k - 1) - chebyshev_poly(k - 2)


def chebyshev_derivs_at_one(k: int) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """(T_k(1), T_k'(1), T_k''(1), T_k'''(1)).

    Closed forms: 1, k^2, (k^4 - k^2)/3 and k^2 (k^2 - 1)(k^2 - 4)/15.  Each
    is checked against the derivative of the explicit polynomial.
    """
    if k < 0:
        raise ValueError("Chebyshev index must be >= 0")
    k2 = k * k
    closed = (
        Fraction(1),
        Fraction(k2),
        Fraction(k2 * k2 - k2, 3),
        Fraction(k2 * (k2 - 1) * (k2 - 4), 15),
    )
    t = chebyshev_poly(k)
    direct = tuple(t.derivative(j)(1) for j in range(4))
    if direct != closed:
        raise ArithmeticError(f"Chebyshev derivative identities fail at k={k}: {direct} vs {closed}")
    return closed


def nae_condition(n: int, c) -> Fraction:
    """Left side of 2c + (2/3)c^2 - 2c/(3(n-2)) > 1."""
    c = Q(c)
    return 2 * c + Fraction(2, 3) * c * c - 2 * c / (3 * (n - 2))


@dataclass(frozen=True)
class ChebyshevApproximant:
    n: int
    c: Fraction
    d: int
    poly: UnivariatePoly
    scale: Fraction  # T_d(n / (n - 2))
    values: tuple[Fraction, ...]  # poly(k), k = 0..n
    deviations: tuple[Fraction, ...]  # |poly(k) - NAE_n at weight k|

    @property
    def max_deviation(self) -> Fraction:
        return max(self.deviations)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "c": fmt_q(self.c),
            "d": self.d,
            "scale": fmt_q(self.scale),
            "scale_approx": float(self.scale),
            "poly": self.poly.format(),
            "values": [fmt_q(v) for v in self.values],
            "deviations": [fmt_q(v) for v in self.deviations],
            "max_deviation": fmt_q(self.max_deviation),
        }


def nae_approximant(n: int, c) -> ChebyshevApproximant:
    """p(x) = 1 - 2 T_d((2x - n)/(n - 2)) / (3 T_d(n/(n - 2))), a 1/3-approximant
    of NAE_n in the weight, with d = ceil(sqrt(c(n - 2))) bumped to even."""
    c = Q(c)
    if n < 5:
        raise ValueError("the Chebyshev construction needs n >= 5")
    if c <= 0 or nae_condition(n, c) <= 1:
        raise ValueError(f"c = {fmt_q(c)} violates 2c + 2c^2/3 - 2c/(3(n-2)) > 1 for n = {n}")
    d = ceil_sqrt(c * (n - 2))
    if d % 2:
        d += 1
    scale = chebyshev_eval(d, Fraction(n, n - 2))
    if scale < 2:
        raise ArithmeticError(f"T_{d}({n}/{n - 2}) = {fmt_q(scale)} < 2")
    arg = UnivariatePoly((Fraction(-n, n - 2), Fraction(2, n - 2)))
    poly = 1 - chebyshev_poly(d).compose(arg) * Fraction(2, 1) / (3 * scale)
    values = tuple(poly(k) for k in range(n + 1))
    target = [0] + [1] * (n - 1) + [0]
    deviations = tuple(abs(v - t) for v, t in zip(values, target))
    if max(deviations) > Fraction(1, 3):
        raise ArithmeticError("approximant leaves the 1/3 band")
    return ChebyshevApproximant(n, c, d, poly, scale, values, deviations)


def optimal_c(n: int, precision=Fraction(1, 1000)) -> tuple[Fraction, float]:
    """Smallest c on a bisection grid (within ``precision``) that satisfies
    the admissibility inequality for this n, plus the n -> infinity limit."""
    if n < 5:
        raise ValueError("the Chebyshev construction needs n >= 5")
    precision = Q(precision)
    lo, hi = Fraction(0), Fraction(1)
    while nae_condition(n, hi) <= 1:
        hi *= 2
    while hi - lo > precision:
        mid = (lo + hi) / 2
        if nae_condition(n, mid) > 1:
            hi = mid
        else:
            lo = mid
    return hi, NAE_ASYMPTOTE
