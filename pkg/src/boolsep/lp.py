"""Exact rational linear programming.

Two-phase primal simplex with Bland's rule.  Each tableau row is kept as a
primitive integer vector: an equation may be scaled by any positive
constant without changing its solution set, so pivots only ever need
integer products and a gcd, never rational normalisation.  The basic
variable of row i then has some positive coefficient beta_i rather than 1,
and its value is rhs_i / beta_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Sequence

from .rational import Q, fmt_q

__all__ = ["Constraint", "LinearProgram", "LpOutcome", "solve", "RELATIONS"]

RELATIONS = ("<=", "=", ">=")


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    rel: str
    rhs: Fraction

    def holds(self, point: Sequence[Fraction]) -> bool:
        lhs = sum((c * v for c, v in zip(self.coeffs, point)), Fraction(0))
        if self.rel == "<=":
            return lhs <= self.rhs
        if self.rel == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass
class LinearProgram:
    """min/max objective . x subject to linear rows.

    Variables are free (unrestricted in sign) unless listed in ``nonneg``.
    """

    variables: list[str]
    objective: list[Fraction] = field(default_factory=list)
    sense: str = "min"
    constraints: list[Constraint] = field(default_factory=list)
    nonneg: set[str] = field(default_factory=set)

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        if not self.objective:
            self.objective = [Fraction(0)] * len(self.variables)
        self.objective = [Q(c) for c in self.objective]

    def add(self, coeffs: Sequence | Mapping[str, object], rel: str, rhs) -> "LinearProgram":
        if isinstance(coeffs, Mapping):
            unknown = set(coeffs) - set(self.variables)
            if unknown:
                raise ValueError(f"unknown variables {sorted(unknown)}")
            row = tuple(Q(coeffs.get(v, 0)) for v in self.variables)
        else:
            row = tuple(Q(c) for c in coeffs)
        if rel not in RELATIONS:
            raise ValueError(f"relation must be one of {RELATIONS}, got {rel!r}")
        self.constraints.append(Constraint(row, rel, Q(rhs)))
        return self

    def validate(self) -> None:
        width = len(self.variables)
        if self.sense not in ("min", "max"):
            raise ValueError(f"sense must be 'min' or 'max', got {self.sense!r}")
        if len(self.objective) != width:
            raise ValueError("objective width does not match the variable count")
        for i, con in enumerate(self.constraints):
            if len(con.coeffs) != width:
                raise ValueError(f"constraint {i} has {len(con.coeffs)} coefficients, expected {width}")
            if con.rel not in RELATIONS:
                raise ValueError(f"constraint {i} has relation {con.rel!r}")
        if self.nonneg - set(self.variables):
            raise ValueError("nonneg names unknown variables")

    def dump(self) -> str:
        """One constraint per line: ``<c1> <c2> ... <rel> <rhs>``."""
        lines = [" ".join(fmt_q(c) for c in con.coeffs) + f" {con.rel} {fmt_q(con.rhs)}" for con in self.constraints]
        return "\n".join(lines)

    def feasible_point(self, point: Sequence[Fraction]) -> bool:
        for name, v in zip(self.variables, point):
            if name in self.nonneg and v < 0:
                return False
        return all(con.holds(point) for con in self.constraints)


@dataclass(frozen=True)
class LpOutcome:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    vertex: dict[str, Fraction] | None = None
    # phase-1 optimum (sum of artificials); > 0 certifies infeasibility
    phase1_value: Fraction = Fraction(0)
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"

    def to_json(self) -> dict:
        out = {"status": self.status, "pivots": self.pivots}
        if self.value is not None:
            out["value"] = fmt_q(self.value)
        if self.vertex is not None:
            out["vertex"] = {k: fmt_q(v) for k, v in self.vertex.items()}
        if self.status == "infeasible":
            out["phase1_value"] = fmt_q(self.phase1_value)
        return out


def _primitive(row: list[int]) -> list[int]:
    g = gcd(*row)
    if g > 1:
        return [v // g for v in row]
    return row


def _scale_to_int(row: Sequence[Fraction]) -> list[int]:
    den = lcm(*(q.denominator for q in row)) if row else 1
    return [q.numerator * (den // q.denominator) for q in row]


class _Tableau:
    """Rows are [a_0 .. a_{m-1}, rhs] in primitive integers; ``z`` is the
    objective row [d_0 .. d_{m-1}, -z0, w]: reduced cost d_j / w, current
    objective value z0 / w.  Storing -z0 lets the row be eliminated exactly
    like a constraint row."""

    def __init__(self, rows: list[list[int]], basis: list[int], ncols: int):
        self.rows = rows
        self.basis = basis
        self.ncols = ncols
        self.z: list[int] = []
        self.pivots = 0

    def set_objective(self, cost: Sequence[Fraction]) -> None:
        # d_j = c_j - sum_i c_B(i) a_ij / beta_i ; z0 = sum_i c_B(i) b_i / beta_i
        d = [Fraction(c) for c in cost] + [Fraction(0)]
        for row, bvar in zip(self.rows, self.basis):
            cb = cost[bvar]
            if cb:
                factor = cb / row[bvar]
                for j, a in enumerate(row):
                    if a:
                        d[j] -= factor * a
        self.z = _primitive(_scale_to_int(d + [Fraction(1)]))

    def entering(self, allowed: Sequence[bool]) -> int | None:
        z = self.z
        for j in range(self.ncols):
            if allowed[j] and z[j] < 0:
                return j
        return None

    def leaving(self, s: int) -> int | None:
        best = None
        for i, row in enumerate(self.rows):
            a = row[s]
            if a <= 0:
                continue
            if best is None:
                best = i
                continue
            rb = self.rows[best]
            # compare rhs_i / a vs rhs_best / a_best
            lhs = row[-1] * rb[s]
            rhs = rb[-1] * a
            if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                best = i
        return best

    def pivot(self, r: int, s: int) -> None:
        prow = self.rows[r]
        p = prow[s]
        if p < 0:
            prow = [-v for v in prow]
            p = -p
        prow = _primitive(prow)
        p = prow[s]
        self.rows[r] = prow
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            a = row[s]
            if a:
                self.rows[i] = _primitive([p * u - a * v for u, v in zip(row, prow)])
        z = self.z
        a = z[s]
        if a:
            # zip stops before the trailing scale w, which picks up the factor p
            body = [p * u - a * v for u, v in zip(z, prow)]
            body.append(p * z[-1])
            self.z = _primitive(body)
        self.basis[r] = s
        self.pivots += 1

    def value(self, j: int) -> Fraction:
        for row, b in zip(self.rows, self.basis):
            if b == j:
                return Fraction(row[-1], row[b])
        return Fraction(0)

    def objective_value(self) -> Fraction:
        return Fraction(-self.z[-2], self.z[-1])

    def run(self, allowed: Sequence[bool]) -> str:
        while True:
            s = self.entering(allowed)
            if s is None:
                return "optimal"
            r = self.leaving(s)
            if r is None:
                return "unbounded"
            self.pivot(r, s)


def solve(lp: LinearProgram) -> LpOutcome:
    """Exact optimum of ``lp`` (two-phase simplex, Bland's rule)."""
    lp.validate()
    nvar = len(lp.variables)

    # structural columns: free variables become (pos, neg) pairs
    col_of: list[tuple[int, int | None]] = []
    ncols = 0
    for name in lp.variables:
        if name in lp.nonneg:
            col_of.append((ncols, None))
            ncols += 1
        else:
            col_of.append((ncols, ncols + 1))
            ncols += 2
    n_struct = ncols

    rows_q: list[tuple[list[Fraction], str, Fraction]] = []
    for con in lp.constraints:
        row = [Fraction(0)] * n_struct
        for v, c in enumerate(con.coeffs):
            if c:
                pos, neg = col_of[v]
                row[pos] = c
                if neg is not None:
                    row[neg] = -c
        rel, rhs = con.rel, con.rhs
        if rhs < 0:
            row = [-c for c in row]
            rhs = -rhs
            rel = {"<=": ">=", ">=": "<=", "=": "="}[rel]
        rows_q.append((row, rel, rhs))

    n_slack = sum(1 for _, rel, _ in rows_q if rel != "=")
    n_art = sum(1 for _, rel, _ in rows_q if rel != "<=")
    total = n_struct + n_slack + n_art
    rows: list[list[int]] = []
    basis: list[int] = []
    is_art = [False] * total
    slack_at = n_struct
    art_at = n_struct + n_slack
    for row, rel, rhs in rows_q:
        ints = _scale_to_int(row + [rhs])
        full = ints[:-1] + [0] * (n_slack + n_art) + [ints[-1]]
        if rel == "<=":
            full[slack_at] = 1
            basis.append(slack_at)
            slack_at += 1
        else:
            if rel == ">=":
                full[slack_at] = -1
                slack_at += 1
            full[art_at] = 1
            is_art[art_at] = True
            basis.append(art_at)
            art_at += 1
        rows.append(full)

    tab = _Tableau(rows, basis, total)
    phase1 = Fraction(0)
    if n_art:
        tab.set_objective([Fraction(int(a)) for a in is_art])
        tab.run([True] * total)
        phase1 = tab.objective_value()
        if phase1 > 0:
            return LpOutcome("infeasible", phase1_value=phase1, pivots=tab.pivots)
        # drive zero-level artificials out of the basis, or drop redundant rows
        i = 0
        while i < len(tab.rows):
            if is_art[tab.basis[i]]:
                row = tab.rows[i]
                j = next((j for j in range(total) if not is_art[j] and row[j]), None)
                if j is None:
                    del tab.rows[i]
                    del tab.basis[i]
                    continue
                tab.pivot(i, j)
            i += 1

    cost = [Fraction(0)] * total
    sign = 1 if lp.sense == "min" else -1
    for v, c in enumerate(lp.objective):
        pos, neg = col_of[v]
        cost[pos] = sign * c
        if neg is not None:
            cost[neg] = -sign * c
    tab.set_objective(cost)
    allowed = [not a for a in is_art]
    status = tab.run(allowed)
    if status == "unbounded":
        return LpOutcome("unbounded", phase1_value=phase1, pivots=tab.pivots)

    point = []
    for pos, neg in col_of:
        val = tab.value(pos)
        if neg is not None:
            val -= tab.value(neg)
        point.append(val)
    value = sum((c * x for c, x in zip(lp.objective, point)), Fraction(0))
    if not lp.feasible_point(point) or value != sign * tab.objective_value():
        raise ArithmeticError("simplex returned a vertex that fails exact verification")
    return LpOutcome(
        "optimal",
        value=value,
        vertex=dict(zip(lp.variables, point)),
        phase1_value=phase1,
        pivots=tab.pivots,
    )
