"""Exact-rational / high-precision-real value helpers.

Every numeric result in the package is either a :class:`fractions.Fraction`
(exact, always reduced) or an :class:`mpmath.mpf` carried at
:data:`REAL_PREC` bits. Plain ``int`` is accepted on input anywhere a
value is expected.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

import mpmath

REAL_PREC = 100

mpmath.mp.prec = REAL_PREC

Real = mpmath.mpf
Value = Union[Fraction, mpmath.mpf]


def is_exact(v) -> bool:
    return isinstance(v, (int, Fraction))


def exact(v) -> Fraction:
    """Coerce an int / Fraction / mpq to Fraction; reject reals."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    num = getattr(v, "numerator", None)
    den = getattr(v, "denominator", None)
    if num is not None and den is not None and not isinstance(v, float):
        return Fraction(int(num), int(den))
    raise TypeError(f"not an exact rational: {v!r}")


def to_real(v) -> mpmath.mpf:
    if isinstance(v, mpmath.mpf):
        return v
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    if isinstance(v, (int, float)):
        return mpmath.mpf(v)
    num = getattr(v, "numerator", None)
    if num is not None:
        return mpmath.mpf(int(num)) / int(v.denominator)
    return mpmath.mpf(v)


def to_float(v) -> float:
    if isinstance(v, Fraction):
        return v.numerator / v.denominator
    return float(v)


def power(base: int, e) -> Value:
    """``base**e`` exactly when ``e`` is an integer, otherwise as a Real."""
    if isinstance(e, int):
        return Fraction(base) ** e
    if isinstance(e, Fraction) and e.denominator == 1:
        return Fraction(base) ** int(e)
    return mpmath.power(base, to_real(e))


def rel_diff(a, b) -> float:
    """|a - b| / max(|a|, |b|), computed exactly when both are exact."""
    if is_exact(a) and is_exact(b):
        a, b = Fraction(a), Fraction(b)
        scale = max(abs(a), abs(b))
        return 0.0 if scale == 0 else to_float(abs(a - b) / scale)
    a, b = to_real(a), to_real(b)
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else float(abs(a - b) / scale)


def fmt(v) -> str:
    """``num/den`` for exact values, 15 significant digits for reals."""
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return mpmath.nstr(v, 15)


def decimal(v) -> str:
    return mpmath.nstr(to_real(v), 15)
