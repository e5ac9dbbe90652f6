from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from boolsep.lp import LinearProgram, solve


def test_simple_bound():
    lp = LinearProgram(["x"], [1]).add([1], ">=", 3)
    out = solve(lp)
    assert out.optimal and out.value == 3


def test_infeasible():
    lp = LinearProgram(["x"]).add([1], "<=", 0).add([1], ">=", 1)
    out = solve(lp)
    assert out.status == "infeasible"
    assert out.phase1_value > 0


def test_unbounded():
    lp = LinearProgram(["x"], [-1], nonneg={"x"})
    assert solve(lp).status == "unbounded"


def test_mapping_rows_and_equalities():
    lp = LinearProgram(["a", "b"], [1, 1], "max", nonneg={"a", "b"})
    lp.add({"a": 1, "b": 2}, "<=", 4).add({"a": 3, "b": 1}, "<=", 6)
    out = solve(lp)
    assert out.value == Fraction(14, 5)
    assert out.vertex == {"a": Fraction(8, 5), "b": Fraction(6, 5)}
    lp2 = LinearProgram(["a", "b"], [1, 0]).add([1, 1], "=", 1).add([2, 2], "=", 2).add([1, -1], ">=", 0)
    assert solve(lp2).value == Fraction(1, 2)


def test_validation():
    with pytest.raises(ValueError):
        LinearProgram(["x", "x"])
    with pytest.raises(ValueError):
        LinearProgram(["x"]).add([1], "<", 0)
    with pytest.raises(ValueError):
        LinearProgram(["x"]).add({"y": 1}, "<=", 0)
    with pytest.raises(ValueError):
        solve(LinearProgram(["x"]).add([1, 2], "<=", 0))


def test_dump_format():
    lp = LinearProgram(["x", "y"]).add([1, Fraction(1, 2)], "<=", 3)
    assert lp.dump() == "1 1/2 <= 3"


small = st.integers(-4, 4)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 3), st.integers(1, 4), st.data())
def test_against_float_solver(nvar, ncon, data):
    # box-bounded programs are never unbounded, so only feasibility can differ
    c = data.draw(st.lists(small, min_size=nvar, max_size=nvar))
    rows = [data.draw(st.lists(small, min_size=nvar, max_size=nvar)) for _ in range(ncon)]
    rhs = data.draw(st.lists(small, min_size=ncon, max_size=ncon))
    rels = data.draw(st.lists(st.sampled_from(["<=", ">=", "="]), min_size=ncon, max_size=ncon))
    names = [f"v{i}" for i in range(nvar)]
    lp = LinearProgram(names, c)
    for i in range(nvar):
        e = [0] * nvar
        e[i] = 1
        lp.add(e, "<=", 10).add(e, ">=", -10)
    for r, rel, b in zip(rows, rels, rhs):
        lp.add(r, rel, b)
    out = solve(lp)

    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    for r, rel, b in zip(rows, rels, rhs):
        if rel == "<=":
            a_ub.append(r); b_ub.append(b)
        elif rel == ">=":
            a_ub.append([-v for v in r]); b_ub.append(-b)
        else:
            a_eq.append(r); b_eq.append(b)
    ref = linprog(
        c,
        A_ub=np.array(a_ub) if a_ub else None,
        b_ub=b_ub or None,
        A_eq=np.array(a_eq) if a_eq else None,
        b_eq=b_eq or None,
        bounds=[(-10, 10)] * nvar,
        method="highs",
    )
    if ref.status == 2:
        assert out.status == "infeasible"
    else:
        assert ref.status == 0
        assert out.optimal
        assert abs(float(out.value) - ref.fun) < 1e-7
        assert lp.feasible_point([out.vertex[v] for v in names])


def test_degenerate_cycling_example():
    # Beale's example cycles under the textbook rule; Bland's rule terminates
    lp = LinearProgram(["x1", "x2", "x3", "x4"], [Fraction(-3, 4), 150, Fraction(-1, 50), 6], nonneg={"x1", "x2", "x3", "x4"})
    lp.add([Fraction(1, 4), -60, Fraction(-1, 25), 9], "<=", 0)
    lp.add([Fraction(1, 2), -90, Fraction(-1, 50), 3], "<=", 0)
    lp.add([0, 0, 1, 0], "<=", 1)
    out = solve(lp)
    assert out.value == Fraction(-1, 20)
