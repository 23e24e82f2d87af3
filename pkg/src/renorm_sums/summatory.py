"""Direct summation of scaled, product, power and Dirichlet summatory forms.

All forms reduce to summing ``g(k)`` for ``k <= N`` where ``g`` is
multiplicative away from a few distinguished primes. Values are built in
one pass over the sieve's least-prime decomposition
(``g(k) = g(k / q^e) * g(q^e)``); the distinguished primes contribute a
separate factor depending on their exponent in ``k``. The sieve therefore
only needs to reach ``N``, never ``p^m N``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import gmpy2
import mpmath
import numpy as np

from .functions import MultFn
from .sieve import SmallestPrimeFactorTable
from .values import Value, to_float, to_real

# Rational-valued sums above this N switch from exact to compensated float.
EXACT_RATIONAL_LIMIT = 20_000

_MPQ = type(gmpy2.mpq())


class SummationRangeError(IndexError):
    pass


# --- value conversion -------------------------------------------------------------

def _to_int(v):
    if isinstance(v, Fraction):
        if v.denominator != 1:
            raise TypeError("non-integral value in integer mode")
        return v.numerator
    return int(v)


def _to_mpq(v):
    if isinstance(v, Fraction):
        return gmpy2.mpq(v.numerator, v.denominator)
    return gmpy2.mpq(v)


_CONVERTERS = {"int": _to_int, "mpq": _to_mpq, "float": to_float, "real": to_real}


def resolve_mode(kinds: Sequence[str], N: int, mode: str = "auto") -> str:
    """Pick the arithmetic for a sum: ``int``, ``mpq`` (exact), ``float`` or ``real``."""
    if mode == "exact":
        if "real" in kinds:
            raise ValueError("exact summation of a Real-valued function")
        return "int" if all(k == "integer" for k in kinds) else "mpq"
    if mode in _CONVERTERS:
        return mode
    if mode != "auto":
        raise ValueError(f"unknown summation mode {mode!r}")
    if "real" in kinds:
        return "float"
    if all(k == "integer" for k in kinds):
        return "int"
    return "mpq" if N <= EXACT_RATIONAL_LIMIT else "float"


def _from_mode(v, mode) -> Value:
    if mode == "int":
        return Fraction(v)
    if mode == "mpq":
        return Fraction(int(v.numerator), int(v.denominator))
    return to_real(v)


# --- bulk evaluation -------------------------------------------------------------

def _exponent_array(p: int, N: int) -> np.ndarray:
    out = np.zeros(N + 1, dtype=np.int64)
    q = p
    while q <= N:
        out[q::q] += 1
        q *= p
    return out


def bulk_values(
    rule: Callable[[int, int], Value],
    N: int,
    table: SmallestPrimeFactorTable,
    mode: str,
    specials: Optional[dict[int, Callable[[int], Value]]] = None,
) -> list:
    """``[g(0)=0, g(1), ..., g(N)]`` in the arithmetic of ``mode``.

    ``g`` is multiplicative with local factor ``rule(q, e)`` at ordinary
    primes; at each prime ``p`` in ``specials`` the local factor is
    ``specials[p](a)`` where ``a = v_p(k)`` (including ``a = 0``).
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    if N > table.limit:
        raise SummationRangeError(f"N={N} exceeds sieve limit {table.limit}")
    conv = _CONVERTERS[mode]
    specials = specials or {}
    one = conv(Fraction(1))
    zero = conv(Fraction(0))
    vals = [zero] * (N + 1)
    if N == 0:
        return vals
    vals[1] = one
    q_arr = table.least_prime[: N + 1].tolist()
    e_arr = table.least_prime_exponent[: N + 1].tolist()
    c_arr = table.cofactor[: N + 1].tolist()
    cache: dict = {}
    for k in range(2, N + 1):
        q, e = q_arr[k], e_arr[k]
        key = (q, e)
        loc = cache.get(key)
        if loc is None:
            loc = one if q in specials else conv(rule(q, e))
            cache[key] = loc
        vals[k] = vals[c_arr[k]] * loc if loc != one else vals[c_arr[k]]
    for p, local in specials.items():
        exps = _exponent_array(p, N).tolist()
        factors = {}
        for k in range(1, N + 1):
            a = exps[k]
            fac = factors.get(a)
            if fac is None:
                fac = factors[a] = conv(local(a))
            if vals[k]:
                vals[k] = vals[k] * fac
    return vals


def _kinds(fs) -> list[str]:
    return [f.kind for f in fs]


def _scaled_specials(f: MultFn, scales) -> dict:
    return {p: (lambda a, p=p, m=m: f.value(p, m + a)) for p, m in scales}


def scaled_values(f: MultFn, N: int, p: int, m: int, table, mode: str) -> list:
    """``f(p^m k)`` for ``k = 0..N`` (index 0 holds 0)."""
    if m == 0:
        return bulk_values(f.value, N, table, mode)
    return bulk_values(f.value, N, table, mode, _scaled_specials(f, [(p, m)]))


def _check_scale(p: int, m: int):
    if p < 2 or m < 0:
        raise ValueError("scale needs a prime p and m >= 0")


# --- accumulation ---------------------------------------------------------------

def _segment_sum(values, lo, hi, mode):
    seg = values[lo:hi]
    if mode == "float":
        return math.fsum(seg)
    if mode == "real":
        return mpmath.fsum(seg)
    if mode == "mpq":
        return gmpy2.mpq(sum(seg, gmpy2.mpq(0)))
    return sum(seg)


def cumulative(values: list, grid: Sequence[int], mode: str) -> list:
    """Prefix sums of ``values[1:]`` at each ``N`` in the increasing ``grid``.

    Float segments are summed with ``math.fsum`` and carried across
    segments with Neumaier compensation.
    """
    out, prev = [], 0
    total = _segment_sum(values, 0, 0, mode)
    comp = 0.0
    for N in grid:
        if N < prev:
            raise ValueError("grid must be nondecreasing")
        seg = _segment_sum(values, prev + 1, N + 1, mode)
        if mode == "float":
            t = total + seg
            if abs(total) >= abs(seg):
                comp += (total - t) + seg
            else:
                comp += (seg - t) + total
            total = t
            out.append(total + comp)
        else:
            total = total + seg
            out.append(total)
        prev = N
    return [_from_mode(v, mode) for v in out]


# --- public sums -------------------------------------------------------------------

def sum_unscaled(f: MultFn, N: int, table, mode: str = "auto") -> Value:
    mode = resolve_mode(_kinds([f]), N, mode)
    return cumulative(bulk_values(f.value, N, table, mode), [N], mode)[0]


def sum_scaled(f: MultFn, N: int, p: int, m: int, table, mode: str = "auto") -> Value:
    """``F{f;N,p^m} = sum_{k<=N} f(p^m k)``."""
    _check_scale(p, m)
    mode = resolve_mode(_kinds([f]), N, mode)
    return cumulative(scaled_values(f, N, p, m, table, mode), [N], mode)[0]


def scaled_checkpoints(f: MultFn, grid: Sequence[int], p: int, m: int, table,
                       mode: str = "auto") -> tuple[list, list]:
    """Scaled and unscaled sums at every ``N`` of ``grid`` in one pass each."""
    grid = list(grid)
    if not grid:
        return [], []
    _check_scale(p, m)
    N = max(grid)
    mode = resolve_mode(_kinds([f]), N, mode)
    scaled = cumulative(scaled_values(f, N, p, m, table, mode), grid, mode)
    unscaled = cumulative(bulk_values(f.value, N, table, mode), grid, mode)
    return scaled, unscaled


def sum_multi_scaled(f: MultFn, N: int, scales: Sequence[tuple[int, int]], table,
                     mode: str = "auto") -> Value:
    """``sum_{k<=N} f(k prod p_i^m_i)`` for distinct primes ``p_i``."""
    primes = [p for p, _ in scales]
    if len(set(primes)) != len(primes):
        raise ValueError("scales must use distinct primes")
    for p, m in scales:
        _check_scale(p, m)
    mode = resolve_mode(_kinds([f]), N, mode)
    specials = _scaled_specials(f, [(p, m) for p, m in scales if m > 0])
    return cumulative(bulk_values(f.value, N, table, mode, specials), [N], mode)[0]


def product_values(fs: Sequence[MultFn], ms: Sequence[int], N: int, p: int, table,
                   mode: str) -> list:
    if len(fs) != len(ms) or not fs:
        raise ValueError("fs and ms must be nonempty and of equal length")

    def rule(q, e):
        out = Fraction(1)
        for g in fs:
            out = out * g.value(q, e)
        return out

    def local(a):
        out = Fraction(1)
        for g, m in zip(fs, ms):
            out = out * g.value(p, m + a)
        return out

    specials = {p: local} if any(ms) else None
    return bulk_values(rule, N, table, mode, specials)


def sum_product(fs: Sequence[MultFn], ms: Sequence[int], N: int, p: int, table,
                mode: str = "auto") -> Value:
    """``sum_{k<=N} prod_i f_i(k p^m_i)``."""
    mode = resolve_mode(_kinds(fs), N, mode)
    return cumulative(product_values(fs, ms, N, p, table, mode), [N], mode)[0]


def power_values(f: MultFn, n: int, N: int, p: int, m: int, table, mode: str) -> list:
    if n < 1:
        raise ValueError("power n must be >= 1")
    _check_scale(p, m)

    def rule(q, e):
        return f.value(q, n * e)

    specials = {p: (lambda a: f.value(p, m + n * a))} if m > 0 else None
    return bulk_values(rule, N, table, mode, specials)


def sum_power(f: MultFn, n: int, N: int, p: int, m: int, table, mode: str = "auto") -> Value:
    """``sum_{k<=N} f(k^n p^m)``, using exponent arithmetic on ``k``'s factorization."""
    mode = resolve_mode(_kinds([f]), N, mode)
    return cumulative(power_values(f, n, N, p, m, table, mode), [N], mode)[0]


def dirichlet_abscissa(f: MultFn) -> Fraction:
    """Abscissa of absolute convergence assumed for ``sum f(k) k^-s``."""
    if f.name.startswith("tau"):
        return Fraction(13, 2) if f.name == "tau" else Fraction(13)
    if f.a1 is None:
        return Fraction(1)
    return f.a1


@dataclass(frozen=True)
class DirichletPartial:
    value: Value
    K: int
    warning: Optional[str] = None


def dirichlet_partial(f: MultFn, s, K: int, p: int, m: int, table) -> DirichletPartial:
    """``sum_{k<=K} f(p^m k) k^-s`` in float arithmetic with compensated summation."""
    _check_scale(p, m)
    vals = np.asarray(scaled_values(f, K, p, m, table, "float"), dtype=np.float64)
    ks = np.arange(K + 1, dtype=np.float64)
    ks[0] = 1.0
    terms = vals * ks ** (-float(s))
    terms[0] = 0.0
    warning = None
    if to_real(s) <= to_real(dirichlet_abscissa(f)):
        warning = f"s={s} is outside the region of absolute convergence"
    return DirichletPartial(to_real(math.fsum(terms.tolist())), K, warning)


def dirichlet_checkpoints(f: MultFn, s, grid: Sequence[int], p: int, m: int, table) -> tuple:
    """Scaled and unscaled Dirichlet partial sums on a grid of cutoffs."""
    grid = list(grid)
    K = max(grid)
    ks = np.arange(K + 1, dtype=np.float64)
    ks[0] = 1.0
    weights = ks ** (-float(s))
    out = []
    for mm in (m, 0):
        vals = np.asarray(scaled_values(f, K, p, mm, table, "float"), dtype=np.float64) * weights
        vals[0] = 0.0
        out.append(cumulative(vals.tolist(), grid, "float"))
    return tuple(out)


def sum_double(f: MultFn, N: int, table, mode: str = "auto") -> Value:
    """``sum_{k1,k2<=N} f(k1 k2)``; a direct oracle needing a sieve to ``N^2``."""
    if N * N > table.limit:
        raise SummationRangeError("double sum needs a sieve up to N^2")
    mode = resolve_mode(_kinds([f]), N * N, mode)
    vals = bulk_values(f.value, N * N, table, mode)
    total = _segment_sum([], 0, 0, mode)
    for k1 in range(1, N + 1):
        row = [vals[k1 * k2] for k2 in range(1, N + 1)]
        total = total + _segment_sum(row, 0, N, mode)
    return _from_mode(total, mode)


@dataclass(frozen=True)
class SummatorySpec:
    form: str  # simple | multi_prime | product | power | dirichlet_partial
    N: int
    f: object = None  # MultFn, or a list of MultFn for the product form
    scale: object = None  # (p, m), or a list of (p, m)
    ms: tuple = field(default_factory=tuple)
    n: int = 1
    s: object = None


def evaluate(spec: SummatorySpec, table, mode: str = "auto") -> Value:
    if spec.form == "simple":
        p, m = spec.scale
        return sum_scaled(spec.f, spec.N, p, m, table, mode)
    if spec.form == "multi_prime":
        return sum_multi_scaled(spec.f, spec.N, spec.scale, table, mode)
    if spec.form == "product":
        p = spec.scale if isinstance(spec.scale, int) else spec.scale[0]
        return sum_product(spec.f, spec.ms, spec.N, p, table, mode)
    if spec.form == "power":
        p, m = spec.scale
        return sum_power(spec.f, spec.n, spec.N, p, m, table, mode)
    if spec.form == "dirichlet_partial":
        p, m = spec.scale
        return dirichlet_partial(spec.f, spec.s, spec.N, p, m, table).value
    raise ValueError(f"unknown summatory form {spec.form!r}")
