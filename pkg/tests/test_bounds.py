import math
from fractions import Fraction

import pytest

from boolsep.bounds import (
    EXTREMAL_QUARTIC,
    TAIL_CLOSED_FORM,
    SweepSummary,
    ThresholdQuery,
    closed_form,
    extremal_quartic,
    fourth_derivative_check,
    sweep,
    tail_sum,
    third_derivative_check,
    threshold,
    uniqueness_lp,
    verify_separations,
)
from boolsep.core import compose, family
from boolsep.lp import solve
from boolsep.bounds import _quartic_program


def test_threshold_closed_forms():
    for key in [(1, Fraction(3, 2), "exact"), (2, Fraction(1), "exact"), (2, Fraction(1, 15), "approximate")]:
        q = ThresholdQuery(*key)
        assert abs(threshold(q) - closed_form(q)[1]) < 1e-9


def test_threshold_is_root():
    q = ThresholdQuery(4, Fraction(1, 4))
    x = threshold(q)
    assert abs(x**4 - (1 - x * x / 6) * float(q.multiplier * q.c)) < 1e-9


def test_threshold_validation():
    with pytest.raises(ValueError):
        ThresholdQuery(0, Fraction(1))
    with pytest.raises(ValueError):
        ThresholdQuery(2, Fraction(1), "sloppy")


def test_tail_sum():
    s = tail_sum(60)
    assert abs(float(s) - TAIL_CLOSED_FORM) < 1e-6
    assert s < Fraction(1, 8)
    assert TAIL_CLOSED_FORM == pytest.approx(0.10592206, abs=1e-8)
    with pytest.raises(ValueError):
        tail_sum(3)


def test_nae3_report():
    rep = verify_separations(family("nae", 3))
    assert rep.ok
    assert rep.margins["d2_vs_bs_sqrt10m2"] == 100 - 90


def test_dictator_fails_the_sqrt10_bound():
    # d = bs = 1: (1 + 2)^2 = 9 < 10
    rep = verify_separations(family("dictator", 2))
    assert rep.margins["d2_vs_bs_sqrt10m2"] == -1
    assert rep.verdicts["d2_ge_bs"] and rep.verdicts["s2_ge_d"]


def test_report_with_approx():
    rep = verify_separations(family("or", 3), with_approx=True)
    assert rep.deg13 == 1  # (1 + k)/3 stays within 1/3 of OR_3
    assert rep.verdicts["adeg4_vs_bs_6_101"]
    with pytest.raises(ValueError):
        verify_separations(family("or", 7), with_approx=True)


def test_sweep_parallel_equals_serial():
    a = sweep(3, workers=1)
    b = sweep(3, workers=2)
    assert a.to_json() == b.to_json()


def test_sweep_merge_associative():
    parts = [sweep(2, workers=1) for _ in range(3)]
    x, y, z = parts
    assert x.merge(y).merge(z).to_json() == x.merge(y.merge(z)).to_json()


def test_sweep_caps():
    with pytest.raises(ValueError):
        sweep(5)
    with pytest.raises(ValueError):
        sweep(4, with_approx=True)


def test_sweep4_frozen(sweep4):
    # frozen from an exhaustive run; every violation is a dictator or anti-dictator
    assert sweep4.count == 65536
    assert sorted(v["tt"] for v in sweep4.violations) == [
        "00ff", "0f0f", "3333", "5555", "aaaa", "cccc", "f0f0", "ff00",
    ]
    assert sweep4.min_ratio == Fraction(4, 3)
    assert sweep4.extremal_count == 56


def test_sweep_worker_env(monkeypatch):
    from boolsep.bounds import sweep_workers

    monkeypatch.setenv("BOOLFN_THREADS", "3")
    assert sweep_workers() == 3
    monkeypatch.setenv("BOOLFN_THREADS", "many")
    with pytest.raises(ValueError):
        sweep_workers()


def test_extremal_quartic():
    rec = extremal_quartic()
    assert rec.ok, rec.checks
    assert rec.derivative_at_zero == Fraction(125, 72)


def test_uniqueness_lp():
    rec = uniqueness_lp()
    assert rec.ok, rec.checks
    assert rec.polynomial == EXTREMAL_QUARTIC


def test_quartic_program_feasible_point():
    lp = _quartic_program()
    assert lp.feasible_point(list(EXTREMAL_QUARTIC.coeffs[1:]))
    assert solve(lp).value == Fraction(-1, 144)


def test_derivative_checks():
    g = compose(family("nae", 3), family("nae", 3))
    chk = fourth_derivative_check(g)
    assert chk.verdict and chk.exact
    chk3 = third_derivative_check(family("or", 5))
    assert chk3.verdict
    with pytest.raises(ValueError):
        fourth_derivative_check(family("and", 9))
    with pytest.raises(ValueError):
        third_derivative_check(family("or", 3))


def test_summary_empty_json():
    assert SweepSummary(1, False).to_json()["ok"]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_every_sweep_violation_is_a_literal(n, sweep4):
    s = sweep4 if n == 4 else sweep(n, workers=1)
    literals = set()
    for i in range(1, n + 1):
        f = family("dictator", n, i)
        literals |= {f.hex(), f.complement().hex()}
    assert {v["tt"] for v in s.violations} == literals
    allowed = {"d2_vs_bs_sqrt10m2", "d2_vs_bs_sqrt6_5", "s4_vs_bs_sqrt10m2", "d3_vs_D_sqrt10m2"}
    assert all(set(v["failed"]) <= allowed for v in s.violations)
