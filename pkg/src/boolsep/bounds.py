"""Checks of the degree/block-sensitivity separations and the extremal
degree-4 symmetrization.

Every verdict about an irrational constant is decided with integers: for
instance A >= (sqrt(10) - 2) B with A, B >= 0 is tested as
(A + 2B)^2 >= 10 B^2.  Floats appear only in display values (thresholds,
derivative sup estimates used for one-sided claims).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .approx import approx_degree
from .core import TruthTable
from .lp import LinearProgram, LpOutcome, solve
from .measures import MeasureSet, is_fully_sensitive_at_zero, measure_set
from .poly import (
    UnivariatePoly,
    derivative_at_zero,
    interpolate,
    lagrange_interpolate,
    symmetrize,
    symmetrized_degree,
)
from .rational import Q, fmt_q

__all__ = [
    "ThresholdQuery",
    "threshold",
    "closed_form",
    "CLOSED_FORMS",
    "tail_sum",
    "TAIL_CLOSED_FORM",
    "SeparationReport",
    "verify_separations",
    "SweepSummary",
    "sweep",
    "DerivativeCheck",
    "third_derivative_check",
    "fourth_derivative_check",
    "EXTREMAL_QUARTIC",
    "EXTREMAL_VALUES",
    "EXTREMAL_BINOMIAL",
    "QuarticRecord",
    "extremal_quartic",
    "UniquenessRecord",
    "uniqueness_lp",
    "sweep_workers",
]

SQRT6 = math.sqrt(6)


@dataclass(frozen=True)
class ThresholdQuery:
    k: int
    c: Fraction
    variant: str = "exact"  # "exact" or "approximate"

    def __post_init__(self):
        object.__setattr__(self, "c", Q(self.c))
        if self.k < 1:
            raise ValueError("derivative order k must be >= 1")
        if self.c <= 0:
            raise ValueError("c must be positive")
        if self.variant not in ("exact", "approximate"):
            raise ValueError(f"unknown variant {self.variant!r}")

    @property
    def multiplier(self) -> Fraction:
        """(2k-1)!!/2^(k-1) for exact polynomials, (2k-1)!!/2^k * 6/5 for 1/3-approximants."""
        dfact = math.prod(range(1, 2 * self.k, 2))
        if self.variant == "exact":
            return Fraction(dfact, 2 ** (self.k - 1))
        return Fraction(dfact, 2**self.k) * Fraction(6, 5)


def threshold(q: ThresholdQuery, tol: float = 1e-12) -> float:
    """Root in (0, sqrt 6) of x^k = (1 - x^2/6) * M * c.

    x^k increases and the right side decreases on the interval, from M*c > 0
    down to 0, so the crossing is unique; any admissible ratio d^2/n is at
    least this root.
    """
    mc = float(q.multiplier * q.c)

    def gap(x: float) -> float:
        return x**q.k - (1 - x * x / 6) * mc

    lo, hi = 0.0, SQRT6
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if gap(mid) < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


CLOSED_FORMS = {
    ("exact", 1, Fraction(3, 2)): ("sqrt(10)-2", math.sqrt(10) - 2),
    ("exact", 2, Fraction(1)): ("sqrt(6/5)", math.sqrt(6 / 5)),
    ("approximate", 2, Fraction(1, 15)): ("sqrt(6/101)", math.sqrt(6 / 101)),
}


def closed_form(q: ThresholdQuery) -> tuple[str, float] | None:
    return CLOSED_FORMS.get((q.variant, q.k, q.c))


TAIL_CLOSED_FORM = 4 * math.log(2) - 8 / 3


def tail_sum(limit: int) -> Fraction:
    """sum_{k=4}^{limit} 1 / (k 2^(k-2)); the full series equals 4 ln 2 - 8/3."""
    if limit < 4:
        raise ValueError("limit must be >= 4")
    return sum((Fraction(1, k * 2 ** (k - 2)) for k in range(4, limit + 1)), Fraction(0))


# name -> (lhs - rhs) as an integer; the inequality holds iff the margin is >= 0
def _margins(m: MeasureSet, n: int, sym_deg: int, deg13: int | None) -> dict[str, int]:
    d, s, bs, D = m.d, m.s, m.bs, m.D
    out = {
        "measure_chain": min(bs - s, D - bs, n - D),
        "d2_vs_bs_sqrt10m2": (d * d + 2 * bs) ** 2 - 10 * bs * bs,
        "d2_vs_bs_sqrt6_5": 5 * d**4 - 6 * bs * bs,
        "d2_ge_bs": d * d - bs,
        "s2_ge_d": s * s - d,
        "s4_vs_bs_sqrt10m2": (s**4 + 2 * bs) ** 2 - 10 * bs * bs,
        "D_le_bs_d": bs * d - D,
        "d3_vs_D_sqrt10m2": (d**3 + 2 * D) ** 2 - 10 * D * D,
        "sym_deg_le_d": d - sym_deg,
    }
    if deg13 is not None:
        out["adeg4_vs_bs_6_101"] = 101 * deg13**4 - 6 * bs * bs
        out["adeg2_vs_bs_6"] = 6 * deg13 * deg13 - bs
    return out


@dataclass(frozen=True)
class SeparationReport:
    table: TruthTable
    measures: MeasureSet
    sym_degree: int
    deg13: int | None
    margins: dict[str, int]

    @property
    def verdicts(self) -> dict[str, bool]:
        return {k: v >= 0 for k, v in self.margins.items()}

    @property
    def ok(self) -> bool:
        return all(v >= 0 for v in self.margins.values())

    @property
    def ratios(self) -> dict[str, Fraction | None]:
        m = self.measures
        out: dict[str, Fraction | None] = {
            "d2_over_bs": Fraction(m.d**2, m.bs) if m.bs else None,
            "s4_over_bs": Fraction(m.s**4, m.bs) if m.bs else None,
            "d3_over_D": Fraction(m.d**3, m.D) if m.D else None,
        }
        if self.deg13 is not None:
            out["deg13_2_over_bs"] = Fraction(self.deg13**2, m.bs) if m.bs else None
        return out

    def to_json(self) -> dict:
        ratios = {}
        for k, v in self.ratios.items():
            ratios[k] = None if v is None else fmt_q(v)
            ratios[k + "_approx"] = None if v is None else float(v)
        out = {
            "tt": str(self.table),
            **self.measures.to_json(),
            "sym_degree": self.sym_degree,
            "verdicts": self.verdicts,
            "margins": self.margins,
            "ratios": ratios,
            "ok": self.ok,
        }
        if self.deg13 is not None:
            out["deg13"] = self.deg13
        return out


def verify_separations(f: TruthTable, with_approx: bool = False) -> SeparationReport:
    if with_approx and f.n > 6:
        raise ValueError("approximate-degree verdicts are limited to n <= 6")
    m = measure_set(f)
    sym_deg = symmetrized_degree(f)
    deg13 = approx_degree(f).degree if with_approx else None
    return SeparationReport(f, m, sym_deg, deg13, _margins(m, f.n, sym_deg, deg13))


@dataclass
class SweepSummary:
    """Mergeable aggregate over a range of functions; merge is associative."""

    n: int
    with_approx: bool
    count: int = 0
    violations: list[dict] = field(default_factory=list)
    min_margins: dict[str, list] = field(default_factory=dict)  # name -> [margin, hex]
    min_ratio: Fraction | None = None  # min d^2/bs over bs >= 2
    extremal_count: int = 0
    extremal_examples: list[str] = field(default_factory=list)
    distribution: dict[str, int] = field(default_factory=dict)  # "d,bs" -> count

    MAX_EXAMPLES = 8

    def add(self, rep: SeparationReport) -> None:
        self.count += 1
        hx = rep.table.hex()
        failed = [k for k, v in rep.margins.items() if v < 0]
        if failed:
            self.violations.append({"tt": hx, "failed": failed})
        for k, v in rep.margins.items():
            cur = self.min_margins.get(k)
            if cur is None or v < cur[0] or (v == cur[0] and hx < cur[1]):
                self.min_margins[k] = [v, hx]
        m = rep.measures
        key = f"{m.d},{m.bs}"
        self.distribution[key] = self.distribution.get(key, 0) + 1
        if m.bs >= 2:
            self._offer(Fraction(m.d * m.d, m.bs), 1, [hx])

    def _offer(self, ratio: Fraction, count: int, examples: list[str]) -> None:
        if self.min_ratio is None or ratio < self.min_ratio:
            self.min_ratio, self.extremal_count, self.extremal_examples = ratio, 0, []
        if ratio == self.min_ratio:
            self.extremal_count += count
            self.extremal_examples = sorted(self.extremal_examples + examples)[: self.MAX_EXAMPLES]

    def merge(self, other: "SweepSummary") -> "SweepSummary":
        out = SweepSummary(self.n, self.with_approx)
        out.count = self.count + other.count
        out.violations = sorted(self.violations + other.violations, key=lambda v: v["tt"])
        for src in (self.min_margins, other.min_margins):
            for k, (v, hx) in src.items():
                cur = out.min_margins.get(k)
                if cur is None or v < cur[0] or (v == cur[0] and hx < cur[1]):
                    out.min_margins[k] = [v, hx]
        for src in (self.distribution, other.distribution):
            for k, v in src.items():
                out.distribution[k] = out.distribution.get(k, 0) + v
        for part in (self, other):
            if part.min_ratio is not None:
                out._offer(part.min_ratio, part.extremal_count, part.extremal_examples)
        return out

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "with_approx": self.with_approx,
            "count": self.count,
            "violations": self.violations,
            "ok": self.ok,
            "min_margins": {k: {"margin": v, "tt": f"n={self.n} tt={hx}"} for k, (v, hx) in sorted(self.min_margins.items())},
            "extremal": {
                "min_d2_over_bs": None if self.min_ratio is None else fmt_q(self.min_ratio),
                "min_d2_over_bs_approx": None if self.min_ratio is None else float(self.min_ratio),
                "count": self.extremal_count,
                "examples": [f"n={self.n} tt={hx}" for hx in self.extremal_examples],
            },
            "distribution_d_bs": dict(sorted(self.distribution.items())),
        }


def _sweep_range(n: int, start: int, stop: int, with_approx: bool) -> SweepSummary:
    out = SweepSummary(n, with_approx)
    for bits in range(start, stop):
        out.add(verify_separations(TruthTable(n, bits), with_approx))
    return out


def sweep_workers() -> int:
    env = os.environ.get("BOOLFN_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"BOOLFN_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def sweep(n: int, with_approx: bool = False, workers: int | None = None) -> SweepSummary:
    """verify_separations over all 2^(2^n) functions on n variables."""
    cap = 3 if with_approx else 4
    if not 1 <= n <= cap:
        raise ValueError(f"sweep is limited to 1 <= n <= {cap}{' with approximate degree' if with_approx else ''}")
    total = 1 << (1 << n)
    workers = sweep_workers() if workers is None else max(1, workers)
    if workers == 1 or total < 1024:
        return _sweep_range(n, 0, total, with_approx)
    chunks = workers * 4
    bounds = [total * i // chunks for i in range(chunks + 1)]
    summary = SweepSummary(n, with_approx)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_sweep_range, [n] * chunks, bounds[:-1], bounds[1:], [with_approx] * chunks)
        for part in parts:
            summary = summary.merge(part)
    return summary


@dataclass(frozen=True)
class DerivativeCheck:
    order: int
    sup_estimate: float
    bound: Fraction
    exact: bool  # True when the derivative is constant and the comparison is exact
    verdict: bool

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "sup_estimate": self.sup_estimate,
            "bound": fmt_q(self.bound),
            "bound_approx": float(self.bound),
            "exact": self.exact,
            "verdict": self.verdict,
        }


def _sup_abs(g: UnivariatePoly, n: int, dense: bool = False) -> float:
    """Lower bound for sup |g| over [0, n]: endpoints, integers and real
    critical points (dense mode adds a fine grid)."""
    points = [float(k) for k in range(n + 1)]
    dg = g.derivative()
    if not dg.is_zero() and dg.degree >= 1:
        roots = np.roots([float(c) for c in reversed(dg.coeffs)])
        for r in roots:
            if abs(r.imag) < 1e-9 and 0 <= r.real <= n:
                points.append(float(r.real))
    if dense:
        points.extend(np.linspace(0, n, 20001).tolist())
    return max(abs(g.eval_float(x)) for x in points)


def _derivative_check(f: TruthTable, order: int, bound: Fraction) -> DerivativeCheck:
    p = symmetrize(f).poly
    g = p.derivative(order)
    if g.degree == 0:
        value = abs(g(0))
        return DerivativeCheck(order, float(value), bound, True, value >= bound)
    est = _sup_abs(g, f.n)
    if est < float(bound) - 1e-9:
        est = max(est, _sup_abs(g, f.n, dense=True))
    return DerivativeCheck(order, est, bound, False, est >= float(bound) - 1e-9)


def _require_fully_sensitive(f: TruthTable, min_n: int) -> None:
    if f.n < min_n:
        raise ValueError(f"needs n >= {min_n}, got n = {f.n}")
    if not is_fully_sensitive_at_zero(f):
        raise ValueError("function must be fully sensitive at 0 (f(0) = 0 and s(f, 0) = n)")


def third_derivative_check(f: TruthTable) -> DerivativeCheck:
    """sup |q'''| on [0, n] against 1 - q(3), q the symmetrization."""
    _require_fully_sensitive(f, 4)
    q = symmetrize(f).poly
    return _derivative_check(f, 3, 1 - q(3))


def fourth_derivative_check(f: TruthTable) -> DerivativeCheck:
    """sup |q''''| on [0, n] against 1/6, q the symmetrization."""
    _require_fully_sensitive(f, 8)
    return _derivative_check(f, 4, Fraction(1, 6))


EXTREMAL_QUARTIC = UnivariatePoly((Fraction(0), Fraction(125, 72), Fraction(-125, 144), Fraction(5, 36), Fraction(-1, 144)))
EXTREMAL_VALUES = tuple(Q(v) for v in (0, 1, 1, "7/12", "1/6", 0, "1/6", "7/12", 1, 1, 0))
EXTREMAL_BINOMIAL = tuple(Q(v) for v in (0, 1, -1, "7/12", "-1/6"))


@dataclass(frozen=True)
class QuarticRecord:
    poly: UnivariatePoly
    values: tuple[Fraction, ...]
    binomial: tuple[Fraction, ...]
    derivative_at_zero: Fraction
    fourth_derivative: UnivariatePoly
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "poly": self.poly.format(),
            "expr": str(self.poly),
            "values": [fmt_q(v) for v in self.values],
            "binomial": [fmt_q(c) for c in self.binomial],
            "derivative_at_zero": fmt_q(self.derivative_at_zero),
            "fourth_derivative": self.fourth_derivative.format(),
            "checks": self.checks,
            "ok": self.ok,
        }


def extremal_quartic() -> QuarticRecord:
    """Self-check of the unique degree-4 symmetrization for n = 10."""
    p = EXTREMAL_QUARTIC
    values = tuple(p(k) for k in range(11))
    binomial = p.binomial
    p4 = p.derivative(4)
    tight = {0: 0, 1: 1, 2: 1, 5: 0, 7: Fraction(7, 12), 8: 1}
    checks = {
        "values": values == EXTREMAL_VALUES,
        "endpoints_p0_0_p1_1": p(0) == 0 and p(1) == 1,
        "tight_p2_p5_p7_p8": (p(2), p(5), p(7), p(8)) == (1, 0, Fraction(7, 12), 1),
        "unit_interval": all(0 <= v <= 1 for v in values),
        "integral_layer_counts": all((comb(10, k) * v).denominator == 1 and v >= 0 for k, v in enumerate(values)),
        "fourth_derivative_is_minus_one_sixth": p4 == UnivariatePoly.constant(Fraction(-1, 6)),
        "binomial_basis": binomial == EXTREMAL_BINOMIAL,
        "derivative_at_zero": derivative_at_zero(binomial) == Fraction(125, 72) == p.derivative()(0),
        "interpolation_through_tight_points": interpolate(list(tight.items())) == p,
        # fourth derivative of the interpolant on {0,1,2,7,8} and {0,1,2,5,7}
        "lagrange_01278": lagrange_interpolate([(k, p(k)) for k in (0, 1, 2, 7, 8)]).derivative(4)
        == UnivariatePoly.constant(Fraction(-4, 7) + Fraction(2, 5) * p(2) - Fraction(4, 35) * p(7) + Fraction(1, 14) * p(8)),
        "lagrange_01257": lagrange_interpolate([(k, p(k)) for k in (0, 1, 2, 5, 7)]).derivative(4)
        == UnivariatePoly.constant(-1 + Fraction(4, 5) * p(2) - Fraction(1, 5) * p(5) + Fraction(2, 35) * p(7)),
    }
    return QuarticRecord(p, values, binomial, derivative_at_zero(binomial), p4, checks)


@dataclass(frozen=True)
class UniquenessRecord:
    minimum: LpOutcome
    positive: LpOutcome
    maximum: LpOutcome
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def polynomial(self) -> UnivariatePoly | None:
        if not self.minimum.optimal:
            return None
        v = self.minimum.vertex
        return UnivariatePoly((Fraction(0), v["c1"], v["c2"], v["c3"], v["c4"]))

    def to_json(self) -> dict:
        poly = self.polynomial
        return {
            "min_c4": fmt_q(self.minimum.value) if self.minimum.optimal else self.minimum.status,
            "positive_c4": self.positive.status,
            "max_c4": fmt_q(self.maximum.value) if self.maximum.optimal else self.maximum.status,
            "polynomial": poly.format() if poly else None,
            "expr": str(poly) if poly else None,
            "checks": self.checks,
            "ok": self.ok,
        }


def _quartic_program(sense: str = "min", c4_floor: Fraction | None = None) -> LinearProgram:
    """p(x) = c1 x + c2 x^2 + c3 x^3 + c4 x^4 with p(1) = 1, 0 <= p(k) <= 1 for k = 2..10."""
    lp = LinearProgram(["c1", "c2", "c3", "c4"], [0, 0, 0, 1], sense)
    lp.add([1, 1, 1, 1], "=", 1)
    for k in range(2, 11):
        row = [k, k**2, k**3, k**4]
        lp.add(row, ">=", 0)
        lp.add(row, "<=", 1)
    if c4_floor is not None:
        lp.add([0, 0, 0, 1], ">=", c4_floor)
    return lp


def uniqueness_lp() -> UniquenessRecord:
    """min c4, then c4 > 0 (modelled as c4 >= 1/1000), then max c4.

    Together with sup|p''''| = |24 c4| >= 1/6 this pins c4 = -1/144 and hence
    the polynomial.
    """
    lo = solve(_quartic_program("min"))
    pos = solve(_quartic_program("min", Fraction(1, 1000)))
    hi = solve(_quartic_program("max"))
    target = Fraction(-1, 144)
    checks = {
        "min_c4_is_minus_1_144": lo.optimal and lo.value == target,
        "positive_c4_infeasible": pos.status == "infeasible",
        "max_c4_nonpositive": hi.optimal and hi.value <= 0,
        "consistent": lo.optimal and hi.optimal and lo.value <= hi.value <= 0,
        "vertex_is_extremal_quartic": lo.optimal
        and tuple(lo.vertex[c] for c in ("c1", "c2", "c3", "c4")) == EXTREMAL_QUARTIC.coeffs[1:],
        # c4 <= 0 and |24 c4| >= 1/6 force c4 <= -1/144; min c4 = -1/144 closes it
        "c4_forced": lo.optimal and hi.optimal and lo.value == target and hi.value <= 0,
        # the LP alone already sees the upper end of that range
        "lp_max_at_most_minus_1_144": hi.optimal and hi.value <= target,
    }
    return UniquenessRecord(lo, pos, hi, checks)
