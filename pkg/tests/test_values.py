from fractions import Fraction

import mpmath
from hypothesis import given, strategies as st

from renorm_sums.values import decimal, fmt, is_exact, power, rel_diff, to_float, to_real


def test_exact_power_stays_rational():
    assert power(2, 3) == 8 and isinstance(power(2, -2), Fraction)
    assert power(3, Fraction(4, 2)) == 9
    assert not is_exact(power(2, Fraction(1, 2)))


def test_formatting():
    assert fmt(Fraction(3, 2)) == "3/2"
    assert fmt(Fraction(4)) == "4"
    assert decimal(Fraction(1, 3)) == "0.333333333333333"


def test_real_conversion_keeps_precision():
    third = to_real(Fraction(1, 3))
    assert abs(third * 3 - 1) < mpmath.mpf(10) ** -28


@given(st.fractions(), st.fractions())
def test_rel_diff_symmetric_and_bounded(a, b):
    d = rel_diff(a, b)
    assert d == rel_diff(b, a)
    assert d >= 0
    if a == b:
        assert d == 0


@given(st.fractions(min_value=-10**6, max_value=10**6))
def test_float_roundtrip(q):
    assert abs(to_float(q) - float(q)) <= 1e-12 * max(1, abs(float(q)))
