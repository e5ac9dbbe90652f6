"""Exact rational helpers shared by the text formats and JSON reports."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from numbers import Rational

__all__ = ["Q", "fmt_q", "parse_q", "ceil_sqrt"]


def Q(value) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction.

    Floats are refused on purpose; nothing in this package is allowed to
    silently pick up binary rounding.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_q(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def fmt_q(value) -> str:
    q = Q(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_q(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {text!r}") from exc


def ceil_sqrt(value) -> int:
    """Smallest integer d >= 0 with d*d >= value, for a nonnegative rational."""
    q = Q(value)
    if q < 0:
        raise ValueError("ceil_sqrt of a negative number")
    num, den = q.numerator, q.denominator
    # d^2 >= num/den  <=>  d^2*den >= num
    d = isqrt(num // den)
    while d * d * den < num:
        d += 1
    return d
