from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from multibase.numerics import (
    Interval,
    Ordering,
    Quadratic,
    ScalarSyntaxError,
    UndeterminedError,
    compare,
    format_scalar,
    parse_scalar,
    sqrt_exact,
    sqrt_interval,
    to_interval,
)

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=1000)


def bisect_sqrt(n: Fraction, steps: int) -> tuple[Fraction, Fraction]:
    """Plain bisection on t^2 = n; an oracle independent of isqrt."""
    lo, hi = Fraction(0), max(Fraction(1), n)
    for _ in range(steps):
        mid = (lo + hi) / 2
        if mid * mid <= n:
            lo = mid
        else:
            hi = mid
    return lo, hi


# ---------------------------------------------------------------- compare

def test_compare_equal_rationals():
    assert compare(Fraction(1, 2), Fraction(1, 2)) is Ordering.EQUAL


def test_compare_rational_order():
    assert compare(Fraction(3, 2), Fraction(9, 5)) is Ordering.LESS


def test_compare_sqrt5_enclosure_with_decimal():
    assert compare(sqrt_interval(5, 64), Fraction(2236, 1000)) is Ordering.GREATER


def test_overlapping_intervals_are_unknown():
    a = Interval(Fraction(1), Fraction(2))
    b = Interval(Fraction(3, 2), Fraction(3))
    assert compare(a, b) is Ordering.UNKNOWN
    assert compare(a, Fraction(3, 2)) is Ordering.UNKNOWN


def test_point_intervals_compare_equal():
    assert compare(Interval.point(Fraction(1, 3)), Interval.point(Fraction(1, 3))) is Ordering.EQUAL


@given(fractions, fractions)
def test_compare_matches_cross_multiplication(a, b):
    sign = a.numerator * b.denominator - b.numerator * a.denominator
    expected = Ordering.LESS if sign < 0 else Ordering.GREATER if sign > 0 else Ordering.EQUAL
    assert compare(a, b) is expected


@given(fractions, fractions, st.integers(0, 20), st.integers(2, 30))
def test_quadratic_comparison_is_exact(a, b, c, n):
    x = Quadratic.make(a, b, n) if b else a
    y = c + sqrt_exact(n)
    order = compare(x, y)
    assert order.decided
    xi, yi = to_interval(x, 200), to_interval(y, 200)
    if order is Ordering.LESS:
        assert xi.lo <= yi.hi
    elif order is Ordering.GREATER:
        assert xi.hi >= yi.lo


@given(fractions, st.integers(2, 50), st.integers(8, 64))
def test_raising_precision_never_flips(a, n, bits):
    root = sqrt_exact(n)
    coarse = compare(to_interval(root, bits), a)
    fine = compare(to_interval(root, 4 * bits), a)
    if coarse.decided:
        assert fine is coarse


# ---------------------------------------------------------------- square roots

def test_sqrt_of_perfect_square_is_exact_point():
    r = sqrt_interval(4, 32)
    assert r.is_point and r.lo == 2


def test_sqrt5_matches_bisection_oracle():
    r = sqrt_interval(5, 64)
    assert Fraction("2.23606797749") <= r.lo and r.hi <= Fraction("2.23606797750")
    lo, hi = bisect_sqrt(Fraction(5), 80)
    assert r.lo <= hi and lo <= r.hi


def test_sqrt12_matches_bisection_oracle():
    r = sqrt_interval(12, 64)
    lo, hi = bisect_sqrt(Fraction(12), 90)
    assert r.contains(lo) or r.contains(hi)
    assert abs(float(r) - 3.4641016151377544) < 1e-12
    assert r.meets_width()


@given(st.fractions(min_value=0, max_value=1000, max_denominator=100), st.integers(1, 200))
def test_sqrt_interval_contains_root_and_meets_width(n, bits):
    r = sqrt_interval(n, bits)
    assert r.lo * r.lo <= n <= r.hi * r.hi
    assert r.meets_width()


def test_negative_sqrt_rejected():
    with pytest.raises(ValueError):
        sqrt_interval(-1, 10)


def test_sqrt_exact_reduces_radicand():
    assert sqrt_exact(12) == Quadratic(Fraction(0), Fraction(2), 3)
    assert sqrt_exact(Fraction(9, 4)) == Fraction(3, 2)


# ---------------------------------------------------------------- quadratic field

def test_golden_ratio_identities():
    phi = parse_scalar("(1+sqrt(5))/2")
    assert phi * phi == phi + 1
    assert compare(phi, 1 + 1 / phi) is Ordering.EQUAL
    assert compare(phi, Fraction(1618, 1000)) is Ordering.GREATER
    assert (phi - phi) == 0


def _overlap(a: Interval, b: Interval) -> bool:
    return not (a.hi < b.lo or b.hi < a.lo)


@given(fractions, fractions, fractions, fractions, st.sampled_from([2, 3, 5, 7]))
def test_quadratic_field_operations_match_intervals(a, b, c, e, n):
    x, y = Quadratic.make(a, b, n), Quadratic.make(c, e, n)
    xi, yi = to_interval(x, 300), to_interval(y, 300)
    pairs = [(x + y, xi + yi), (x - y, xi - yi), (x * y, xi * yi)]
    if y != 0:
        pairs.append((x / y, xi / yi))
    for exact, approx in pairs:
        assert _overlap(to_interval(exact, 300), approx)


def test_quadratics_with_different_radicands_compare():
    # 3.1462... against 3.1622...
    assert compare(sqrt_exact(2) + sqrt_exact(3), sqrt_exact(10)) is Ordering.LESS


# ---------------------------------------------------------------- interval arithmetic

@st.composite
def intervals_with_member(draw):
    lo = draw(fractions)
    width = draw(st.fractions(min_value=0, max_value=5, max_denominator=64))
    t = draw(st.fractions(min_value=0, max_value=1, max_denominator=64))
    return Interval(lo, lo + width, 40), lo + width * t


@given(intervals_with_member(), intervals_with_member())
def test_interval_arithmetic_is_conservative(a, b):
    (I, x), (J, y) = a, b
    assert (I + J).contains(x + y)
    assert (I - J).contains(x - y)
    assert (I * J).contains(x * y)
    if not J.lo <= 0 <= J.hi:
        assert (I / J).contains(x / y)


def test_interval_division_by_zero_interval():
    with pytest.raises(ZeroDivisionError):
        Interval(Fraction(1), Fraction(2)) / Interval(Fraction(-1), Fraction(1))


def test_quadratic_comparison_against_wide_interval_raises_on_ordering_operator():
    phi = parse_scalar("(1+sqrt(5))/2")
    with pytest.raises(UndeterminedError):
        _ = phi < Interval(Fraction(1), Fraction(2))


# ---------------------------------------------------------------- literals

@pytest.mark.parametrize("text,value", [
    ("1.9", Fraction(19, 10)),
    ("3/2", Fraction(3, 2)),
    ("-1/2", Fraction(-1, 2)),
    ("2**3", Fraction(8)),
    ("0.125", Fraction(1, 8)),
    ("1e-2", Fraction(1, 100)),
])
def test_parse_rational_literals(text, value):
    assert parse_scalar(text) == value


def test_parse_square_root_expression():
    phi = parse_scalar("(1+sqrt(5))/2")
    assert phi == Quadratic(Fraction(1, 2), Fraction(1, 2), 5)
    assert parse_scalar("sqrt(16)") == 4


@pytest.mark.parametrize("text", ["", "1/0", "x", "sqrt(sqrt(2))", "import os", "2**sqrt(2)", "True"])
def test_parse_rejects_bad_literals(text):
    with pytest.raises(ScalarSyntaxError):
        parse_scalar(text)


@given(fractions)
def test_rational_format_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x


@given(fractions, fractions.filter(bool), st.sampled_from([2, 3, 5, 6]))
def test_quadratic_format_round_trip(a, b, n):
    x = Quadratic.make(a, b, n)
    assert parse_scalar(format_scalar(x)) == x


def test_interval_format_is_outward():
    r = sqrt_interval(2, 64)
    lo_text, hi_text = format_scalar(r).strip("[]").split(", ")
    assert Fraction(lo_text) <= r.lo and r.hi <= Fraction(hi_text)
