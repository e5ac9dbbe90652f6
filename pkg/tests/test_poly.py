from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from boolsep.core import TruthTable, family
from boolsep.poly import (
    UnivariatePoly,
    degree,
    derivative_at_zero,
    forward_differences,
    from_binomial_basis,
    interpolate,
    lagrange_interpolate,
    moebius,
    parse_poly,
    symmetric_lift,
    symmetrize,
    symmetrized_degree,
    to_binomial_basis,
)
from oracles import moebius_bruteforce, symmetrized_values_by_permutation
from test_core import tables

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=12)
polys = st.lists(fractions, max_size=6).map(lambda cs: UnivariatePoly(tuple(cs)))


@given(tables(5))
def test_moebius_matches_bruteforce(f):
    assert moebius(f).coeffs == moebius_bruteforce(f.values, f.n)


@given(tables(5))
def test_moebius_reproduces_table(f):
    p = moebius(f)
    assert all(p(x) == f(x) for x in range(f.size))
    assert degree(f) == p.degree


def test_known_expansions():
    assert str(moebius(family("or", 2))) == "x1 + x2 - x1*x2"
    nae = moebius(family("nae", 3))
    assert nae.degree == 2
    assert nae.coeffs == {1: 1, 2: 1, 4: 1, 3: -1, 5: -1, 6: -1}
    assert degree(family("xor", 4)) == 4
    assert degree(family("const1", 3)) == 0


@given(tables(4))
def test_symmetrize_matches_permutation_average(f):
    res = symmetrize(f)
    assert list(res.values) == symmetrized_values_by_permutation(f.values, f.n)
    assert all(res.poly(k) == v for k, v in enumerate(res.values))
    assert res.degree <= degree(f)
    assert symmetrized_degree(f) == res.degree


def test_symmetrize_nae3():
    res = symmetrize(family("nae", 3))
    assert res.poly == UnivariatePoly((0, Fraction(3, 2), Fraction(-1, 2)))
    assert res.degree == 2


@given(polys)
def test_binomial_roundtrip(p):
    assert from_binomial_basis(to_binomial_basis(p)) == p


@given(polys)
def test_derivative_at_zero_from_binomial(p):
    assert derivative_at_zero(p.binomial) == p.derivative()(0)


@given(polys)
def test_format_parse_roundtrip(p):
    assert parse_poly(p.format()) == p
    assert parse_poly(p.format("binomial")) == p


def test_parse_rejects_bad_degree():
    with pytest.raises(ValueError):
        parse_poly("deg=3 coeffs=1,2")


@given(st.lists(fractions, min_size=1, max_size=6))
def test_newton_equals_lagrange(ys):
    pts = list(enumerate(ys))
    assert interpolate(pts) == lagrange_interpolate(pts)


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=6, unique=True), st.data())
def test_interpolant_hits_nodes(xs, data):
    ys = data.draw(st.lists(fractions, min_size=len(xs), max_size=len(xs)))
    p = interpolate(list(zip(xs, ys)))
    assert p.degree < len(xs)
    assert all(p(x) == y for x, y in zip(xs, ys))


def test_duplicate_nodes_rejected():
    with pytest.raises(ValueError):
        interpolate([(1, 0), (1, 1)])


def test_forward_differences_of_cubes():
    assert forward_differences([k**3 for k in range(5)]) == [0, 1, 6, 6, 0]


@given(polys)
def test_ring_identities(p):
    q = UnivariatePoly((1, 2, 3))
    assert (p + q) - q == p
    assert (p * q).degree == (p.degree + q.degree if not p.is_zero() else 0)
    assert p.compose(UnivariatePoly.x()) == p
    assert (p * q).derivative() == p.derivative() * q + p * q.derivative()


@given(st.integers(1, 5), st.data())
def test_symmetric_lift_evaluates_on_weight(n, data):
    cs = data.draw(st.lists(fractions, max_size=n + 1))
    p = UnivariatePoly(tuple(cs))
    lift = symmetric_lift(p, n)
    assert lift.is_symmetric()
    assert all(lift(x) == p(bin(x).count("1")) for x in range(1 << n))


def test_symmetric_lift_degree_cap():
    with pytest.raises(ValueError):
        symmetric_lift(UnivariatePoly((0, 0, 0, 1)), 2)


def test_zero_polynomial():
    z = UnivariatePoly()
    assert z.degree == 0 and str(z) == "0"
    assert z.format() == "deg=0 coeffs=0"
