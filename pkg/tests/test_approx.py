import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from boolsep.approx import (
    NAE_ASYMPTOTE,
    approx_degree,
    approx_degree_symmetric,
    chebyshev_derivs_at_one,
    chebyshev_eval,
    chebyshev_poly,
    nae_approximant,
    nae_condition,
    optimal_c,
)
from boolsep.core import TruthTable, family
from boolsep.poly import degree
from test_core import tables


@pytest.mark.parametrize(
    "name,n,expected",
    [("and", 2, 1), ("or", 2, 1), ("xor", 3, 3), ("nae", 4, 2), ("const1", 3, 0), ("dictator", 3, 1)],
)
def test_known_approx_degrees(name, n, expected):
    f = family(name, n)
    assert approx_degree(f).degree == expected
    if f.is_symmetric():
        assert approx_degree_symmetric(f).degree == expected


@settings(max_examples=40, deadline=None)
@given(tables(3))
def test_witness_in_band_and_below_degree(f):
    res = approx_degree(f)
    assert res.degree <= degree(f)
    assert res.witness_poly.degree <= res.degree
    assert all(abs(res.witness_poly(x) - f(x)) <= Fraction(1, 3) for x in range(f.size))


@settings(max_examples=30, deadline=None)
@given(tables(3))
def test_one_lower_is_infeasible(f):
    # if degree d-1 were feasible, the ascending search would have stopped there
    res = approx_degree(f)
    if res.degree:
        assert "infeasible" in res.infeasibility_note


def test_smaller_eps_never_lowers_degree():
    f = family("or", 4)
    degs = [approx_degree_symmetric(f, Fraction(1, k)).degree for k in (3, 5, 10, 100)]
    assert degs == sorted(degs)


def test_eps_range():
    with pytest.raises(ValueError):
        approx_degree(family("or", 2), Fraction(1, 2))
    with pytest.raises(ValueError):
        approx_degree_symmetric(family("dictator", 3))


@given(st.integers(0, 20), st.fractions(min_value=-1, max_value=1, max_denominator=50))
def test_chebyshev_matches_cosine(k, x):
    assert abs(float(chebyshev_eval(k, x)) - math.cos(k * math.acos(float(x)))) < 1e-9
    assert chebyshev_poly(k)(x) == chebyshev_eval(k, x)


@pytest.mark.parametrize("k", range(0, 12))
def test_chebyshev_coefficients_match_numpy(k):
    ref = np.polynomial.chebyshev.cheb2poly([0] * k + [1])
    assert [float(c) for c in chebyshev_poly(k).coeffs] == pytest.approx(list(ref))


@pytest.mark.parametrize("k", range(0, 21))
def test_chebyshev_derivatives(k):
    t0, t1, t2, t3 = chebyshev_derivs_at_one(k)
    assert (t0, t1, t2) == (1, k * k, Fraction(k**4 - k**2, 3))
    assert t3 == chebyshev_poly(k).derivative(3)(1)
    assert t3 == Fraction(k * k * (k * k - 1) * (k * k - 4), 15)


@pytest.mark.parametrize("n", [5, 6, 10, 26, 50, 101])
def test_nae_approximant(n):
    c, _ = optimal_c(n)
    ap = nae_approximant(n, c)
    assert ap.scale >= 2
    assert ap.max_deviation <= Fraction(1, 3)
    assert ap.d % 2 == 0 and ap.d * ap.d >= c * (n - 2)
    target = family("nae", n) if n <= 12 else None
    if target is not None:
        # the weight polynomial lifted to the cube stays in the band
        for x in range(target.size):
            assert abs(ap.poly(bin(x).count("1")) - target(x)) <= Fraction(1, 3)


def test_nae_rejects_bad_c():
    with pytest.raises(ValueError):
        nae_approximant(10, Fraction(1, 5))
    with pytest.raises(ValueError):
        nae_approximant(4, 1)


def test_optimal_c_is_tight():
    for n in (6, 10, 50):
        c, limit = optimal_c(n)
        assert nae_condition(n, c) > 1
        assert nae_condition(n, c - Fraction(1, 1000)) <= 1
        assert c > limit
    assert NAE_ASYMPTOTE == pytest.approx(0.436492, abs=1e-6)
