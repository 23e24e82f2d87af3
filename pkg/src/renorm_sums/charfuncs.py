"""Characteristic functions ``L_r`` of scaled summatory functions.

For a scale ``p**m`` the scaled sum splits as
``F{f;N,p^m} = sum_r L_r * F{f; N // p**r, 1}``, and ``L_r`` obeys
``L_r = a_r - sum_{j<r} L_j b_{r-j}`` where ``a_r`` are the scaled values
(``f(p^(m+r))`` in the simple form) and ``b_r`` the unscaled ones
(``f(p^r)``). The product and power forms only change ``a`` and ``b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import gmpy2

from .functions import MultFn
from .values import Value, is_exact, power

DEFAULT_R_MAX = 64


@dataclass(frozen=True)
class CharSequence:
    f_id: str
    p: int
    m: object  # int, or a tuple of ints for the product form
    values: tuple
    form: str = "simple"  # "simple" | "product" | "power" | "shifted"

    def __len__(self):
        return len(self.values)

    def __getitem__(self, r):
        return self.values[r]

    @property
    def r_max(self) -> int:
        return len(self.values) - 1


def _to_internal(v):
    return gmpy2.mpq(v.numerator, v.denominator) if isinstance(v, Fraction) else v


def _from_internal(v):
    if type(v) is type(gmpy2.mpq()):
        return Fraction(int(v.numerator), int(v.denominator))
    return v


def char_from_values(scaled: Sequence[Value], unscaled: Sequence[Value]) -> list[Value]:
    """Solve ``scaled_r = sum_{j<=r} L_j unscaled_{r-j}`` for ``L`` (``unscaled[0] == 1``)."""
    if len(unscaled) < len(scaled):
        raise ValueError("need at least as many unscaled values as scaled ones")
    exact = all(is_exact(v) for v in scaled) and all(is_exact(v) for v in unscaled)
    conv = _to_internal if exact else (lambda v: v)
    a = [conv(v) for v in scaled]
    b = [conv(v) for v in unscaled]
    out = []
    for r in range(len(a)):
        acc = a[r]
        for j in range(r):
            bj = b[r - j]
            if bj:
                acc -= out[j] * bj
        out.append(acc)
    return [_from_internal(v) if exact else v for v in out]


def _trivial(r_max):
    return tuple([Fraction(1)] + [Fraction(0)] * r_max)


def char_seq(f: MultFn, p: int, m: int, r_max: int = DEFAULT_R_MAX) -> CharSequence:
    if r_max < 0 or m < 0:
        raise ValueError("r_max and m must be nonnegative")
    if m == 0:
        return CharSequence(f.name, p, m, _trivial(r_max))
    scaled = [f.value(p, m + r) for r in range(r_max + 1)]
    unscaled = [f.value(p, r) for r in range(r_max + 1)]
    return CharSequence(f.name, p, m, tuple(char_from_values(scaled, unscaled)))


def char_seq_product(fs: Sequence[MultFn], ms: Sequence[int], p: int,
                     r_max: int = DEFAULT_R_MAX) -> CharSequence:
    """Characteristic functions of ``sum_k prod_i f_i(k p^(m_i))``."""
    if len(fs) != len(ms) or not fs:
        raise ValueError("fs and ms must be nonempty and of equal length")
    if any(m < 0 for m in ms):
        raise ValueError("exponents must be nonnegative")
    name = "*".join(f.name for f in fs)
    ms = tuple(ms)
    if all(m == 0 for m in ms):
        return CharSequence(name, p, ms, _trivial(r_max), form="product")

    def prod_at(shifts, r):
        out = Fraction(1)
        for f, s in zip(fs, shifts):
            out = out * f.value(p, s + r)
        return out

    zeros = (0,) * len(fs)
    scaled = [prod_at(ms, r) for r in range(r_max + 1)]
    unscaled = [prod_at(zeros, r) for r in range(r_max + 1)]
    return CharSequence(name, p, ms, tuple(char_from_values(scaled, unscaled)), form="product")


def char_seq_power(f: MultFn, n: int, p: int, m: int,
                   r_max: int = DEFAULT_R_MAX) -> CharSequence:
    """Characteristic functions of ``sum_k f(k^n p^m)`` (stride-``n`` powers)."""
    if n < 1:
        raise ValueError("power n must be >= 1")
    if m == 0:
        return CharSequence(f.name, p, m, _trivial(r_max), form="power")
    scaled = [f.value(p, m + n * r) for r in range(r_max + 1)]
    unscaled = [f.value(p, n * r) for r in range(r_max + 1)]
    return CharSequence(f.name, p, m, tuple(char_from_values(scaled, unscaled)), form="power")


def char_shift_dirichlet(seq: CharSequence, s) -> CharSequence:
    """``L_r(f k^-s; p^m) = L_r(f; p^m) p^(-(m+r)s)``."""
    if seq.form != "simple":
        raise ValueError("the shift relation applies to simple-form sequences")
    m = seq.m
    if m == 0:
        return CharSequence(f"{seq.f_id}/k^{s}", seq.p, m, seq.values, form="shifted")
    vals = tuple(v * power(seq.p, -(m + r) * s) for r, v in enumerate(seq.values))
    return CharSequence(f"{seq.f_id}/k^{s}", seq.p, m, vals, form="shifted")


def char_closed_Af(A_f: Value, p: int, m: int, r: int, inverse: bool = False) -> Value:
    """Closed form for ``f(p^m) = A_f p^(m-1)`` and for its reciprocal ``1/f``."""
    if m < 1:
        raise ValueError("closed form holds only for m >= 1")
    if r < 0:
        raise ValueError("r must be nonnegative")
    A = Fraction(A_f) if is_exact(A_f) else A_f
    P = Fraction(p)
    if inverse:
        return (1 / A) * (1 / P - 1 / A) ** r * P ** (1 - m)
    return A * (P - A) ** r * P ** (m - 1)


def char_tau(p: int, m: int, r: int, tau_of) -> int:
    """``L_r(tau; p^m)``; nonzero only for ``r <= 1``. ``tau_of(p, j)`` gives ``tau(p^j)``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if r == 0:
        return tau_of(p, m)
    if r == 1:
        return -(p**11) * tau_of(p, m - 1)
    return 0


def char_tau_sq(p: int, m: int, r: int, tau_of) -> int:
    if m < 1:
        raise ValueError("m must be >= 1")
    t_m, t_prev, t_p = tau_of(p, m), tau_of(p, m - 1), tau_of(p, 1)
    if r == 0:
        return t_m**2
    if r == 1:
        return p**22 * t_prev**2 - 2 * p**11 * t_p * t_prev * t_m
    return 2 * (-(p**11)) ** r * t_p * t_prev * t_m
