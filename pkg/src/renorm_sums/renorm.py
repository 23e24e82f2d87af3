"""Asymptotic renormalization ``R_inf(f; p^m)`` by series and rational routes.

Series route: ``R_inf = sum_r L_r x^r`` with ``x = p**-a1``.
Rational route: ``R_inf = U / (1 + V)`` where
``U = sum_{r>=0} f(p^(m+r)) x^r`` and ``V = sum_{r>=1} f(p^r) x^r``.

When the coefficients are exact rationals and satisfy a short linear
recurrence (every exponential-polynomial prime-power rule does), ``U`` and
``V`` are summed in closed form: the recurrence is found by
Berlekamp-Massey, the generating function becomes ``P(x)/C(x)``, and
convergence is decided from the roots of ``C``. Otherwise the series are
summed term by term to a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import gmpy2
import mpmath
import numpy as np

from .charfuncs import char_from_values
from .functions import MultFn, shifted
from .special import EulerProductSpec, euler_product
from .values import Value, is_exact, power, to_real

DEFAULT_TOL = 1e-15
DEFAULT_R_MAX = 200
WATCHDOG = 10
BM_TERMS = 64
RATIONAL_MAX_TERMS = 5000


class DivergenceError(ArithmeticError):
    pass


class PoleError(ArithmeticError):
    """``1 + V = 0``: the rational representation has a pole."""


class MissingGrowthError(ValueError):
    pass


@dataclass(frozen=True)
class RenormResult:
    value: Value
    route: str  # "series" | "rational" | "closed_form"
    r_max: Optional[int] = None
    tol: Optional[float] = None
    truncation_estimate: float = 0.0
    a1_used: Optional[Value] = None
    terms_used: int = 0

    @property
    def exact(self) -> bool:
        return is_exact(self.value) and self.truncation_estimate == 0.0


@dataclass(frozen=True)
class RationalRep:
    U: Value
    V: Value
    terms_used: int
    exact: bool


def _one(route, a1=None):
    return RenormResult(Fraction(1), route, truncation_estimate=0.0, a1_used=a1)


def _x_for(a1, p):
    if a1 is None:
        raise MissingGrowthError("no growth exponent a1 registered for this function")
    return power(p, -Fraction(a1) if is_exact(a1) else -a1)


# --- exact power-series sums ------------------------------------------------------

def berlekamp_massey(seq: Sequence) -> list:
    """Shortest ``C = [1, c1, ..., cL]`` with ``sum_i C[i] s[n-i] = 0`` for ``n >= L``."""
    s = [gmpy2.mpq(v.numerator, v.denominator) if isinstance(v, Fraction) else gmpy2.mpq(v)
         for v in seq]
    C, B = [gmpy2.mpq(1)], [gmpy2.mpq(1)]
    L, shift, b = 0, 1, gmpy2.mpq(1)
    for n in range(len(s)):
        d = s[n]
        for i in range(1, L + 1):
            d += C[i] * s[n - i]
        if d == 0:
            shift += 1
            continue
        coef = d / b
        T = list(C)
        need = len(B) + shift
        if len(C) < need:
            C = C + [gmpy2.mpq(0)] * (need - len(C))
        for i, bi in enumerate(B):
            C[i + shift] -= coef * bi
        if 2 * L <= n:
            L, B, b, shift = n + 1 - L, T, d, 1
        else:
            shift += 1
    C = C[: L + 1] + [gmpy2.mpq(0)] * max(0, L + 1 - len(C))
    return [Fraction(int(c.numerator), int(c.denominator)) for c in C]


def _poly_eval(coeffs, x):
    out = Fraction(0) if is_exact(x) else mpmath.mpf(0)
    for c in reversed(coeffs):
        out = out * x + c
    return out


def _min_root_modulus(C, P) -> float:
    """Smallest modulus of a root of ``C`` that ``P`` does not cancel."""
    if len(C) <= 1:
        return float("inf")
    # numpy wants highest degree first
    roots = np.roots([float(c) for c in reversed(C)])
    best = float("inf")
    for z in roots:
        pz = sum(float(c) * z**i for i, c in enumerate(P)) if P else 0.0
        scale = sum(abs(float(c)) * abs(z) ** i for i, c in enumerate(P)) or 1.0
        if abs(pz) <= 1e-9 * scale:
            continue
        best = min(best, abs(z))
    return best


def exact_series_sum(coeffs: Sequence[Fraction], x: Fraction) -> Optional[Fraction]:
    """``sum_r coeffs[r] x^r`` in closed form, or ``None`` if no short recurrence fits.

    Raises :class:`DivergenceError` when ``x`` lies on or outside the
    radius of convergence of the detected rational generating function.
    """
    C = berlekamp_massey(coeffs)
    L = len(C) - 1
    if 2 * L + 8 > len(coeffs):
        return None
    # P = (C * S) mod y^L
    P = []
    for n in range(L):
        P.append(sum(C[i] * coeffs[n - i] for i in range(0, n + 1) if i <= L))
    while P and P[-1] == 0:
        P.pop()
    radius = _min_root_modulus(C, P)
    if abs(float(x)) >= radius * (1 - 1e-12):
        raise DivergenceError(
            f"series diverges: |x|={float(x):.6g} >= radius {radius:.6g}")
    den = _poly_eval(C, x)
    if den == 0:
        raise DivergenceError("generating function has a pole at x")
    return _poly_eval(P, x) / den


def numeric_series_sum(term: Callable[[int], Value], tol, max_terms=RATIONAL_MAX_TERMS,
                       start=0) -> tuple:
    """Sum ``term(r)`` for ``r >= start`` until three terms fall below ``tol`` relative."""
    total = mpmath.mpf(0)
    small = growing = 0
    prev = None
    tol = to_real(tol)
    for r in range(start, max_terms):
        t = to_real(term(r))
        total += t
        mag = abs(t)
        if prev is not None and mag > prev and mag != 0:
            growing += 1
            if growing >= WATCHDOG:
                raise DivergenceError("terms grew for 10 consecutive steps")
        else:
            growing = 0
        prev = mag
        if mag <= tol * max(abs(total), mpmath.mpf(10) ** -300):
            small += 1
            if small >= 3:
                return total, r + 1, float(mag)
        else:
            small = 0
    raise DivergenceError(f"series did not converge within {max_terms} terms")


def _series_value(coeff: Callable[[int], Value], x, tol, start=0):
    """``sum_{r>=start} coeff(r) x^r``; returns (value, terms used, exact flag)."""
    if is_exact(x):
        cs = [coeff(r) for r in range(start, start + BM_TERMS)]
        if all(is_exact(c) for c in cs):
            val = exact_series_sum([Fraction(c) for c in cs], Fraction(x))
            if val is not None:
                return val * Fraction(x) ** start, BM_TERMS, True
    xr = to_real(x)
    val, n, _ = numeric_series_sum(lambda r: to_real(coeff(r)) * xr**r, tol, start=start)
    return val, n, False


def _rational_from(scaled: Callable[[int], Value], unscaled: Callable[[int], Value],
                   x, tol) -> RationalRep:
    U, nu, eu = _series_value(scaled, x, tol)
    V, nv, ev = _series_value(unscaled, x, tol, start=1)
    return RationalRep(U, V, max(nu, nv), eu and ev)


def _finish_rational(rep: RationalRep, a1, tol) -> RenormResult:
    den = 1 + rep.V
    if den == 0 or (not rep.exact and abs(to_real(den)) < mpmath.mpf(10) ** -25):
        raise PoleError("1 + V vanishes: the rational representation has a pole")
    value = rep.U / den if rep.exact else to_real(rep.U) / to_real(den)
    est = 0.0 if rep.exact else float(tol)
    return RenormResult(value, "rational", tol=None if rep.exact else tol,
                        truncation_estimate=est, a1_used=a1, terms_used=rep.terms_used)


def rational_rep(f: MultFn, p: int, m: int, tol=DEFAULT_TOL) -> RationalRep:
    x = _x_for(f.a1, p)
    return _rational_from(lambda r: f.value(p, m + r), lambda r: f.value(p, r), x, tol)


def renorm_rational(f: MultFn, p: int, m: int, tol=DEFAULT_TOL) -> RenormResult:
    """``R_inf`` from the rational representation ``U/(1+V)``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        return _one("rational", f.a1)
    return _finish_rational(rational_rep(f, p, m, tol), f.a1, tol)


# --- series route -----------------------------------------------------------------

ZERO_RUN = 12


def _eventually_zero(seq) -> bool:
    """Exact certificate that a rational sequence is zero from some index on.

    Berlekamp-Massey returns the trivial connection polynomial exactly when the
    sequence is a finite list followed by zeros; the usual ``2L`` bound decides
    whether enough terms were seen.
    """
    C = berlekamp_massey(seq)
    L = len(C) - 1
    return all(c == 0 for c in C[1:]) and 2 * L + 8 <= len(seq)


def series_from_char(L_of: Callable[[int], Value], x, r_max: int, tol) -> tuple:
    """Partial sum of ``L_r x^r`` with early stop and divergence watchdog.

    Returns ``(value, r_used, truncation_estimate)``. Exact coefficients that
    fit a short linear recurrence are summed in closed form. Runs of exact zeros end
    the sum only when the sequence is certified eventually zero; sparse
    sequences with long gaps keep going.
    """
    exact = is_exact(x)
    if exact and r_max >= BM_TERMS:
        head = [L_of(r) for r in range(BM_TERMS)]
        if all(is_exact(v) for v in head):
            val = exact_series_sum([Fraction(v) for v in head], Fraction(x))
            if val is not None:
                return val, BM_TERMS - 1, 0.0
    total = Fraction(0) if exact else mpmath.mpf(0)
    nonzero: list = []  # (r, |term|)
    seen: list = []
    zeros = growing = 0
    tol_r = to_real(tol)
    xr = Fraction(x) if exact else x
    for r in range(r_max + 1):
        L = L_of(r)
        if exact and not is_exact(L):
            exact = False
            total = to_real(total)
            xr = to_real(xr)
        if exact:
            seen.append(L)
        term = L * xr**r
        total = total + term
        if term == 0:
            zeros += 1
            if zeros >= ZERO_RUN and zeros % ZERO_RUN == 0:
                if exact and _eventually_zero(seen):
                    return total, r, 0.0
                if not exact and zeros >= 2 * ZERO_RUN:
                    return total, r, 0.0
            continue
        zeros = 0
        mag = abs(to_real(term))
        if nonzero and mag > nonzero[-1][1]:
            growing += 1
            if growing >= WATCHDOG:
                raise DivergenceError("characteristic series terms grew for 10 consecutive r")
        else:
            growing = 0
        nonzero.append((r, mag))
        if r >= 4:
            q = _decay_ratio(nonzero)
            if q is not None and q < 1:
                est = mag * q / (1 - q)
                if est <= tol_r * abs(to_real(total)):
                    return total, r, float(est)
    q = _decay_ratio(nonzero)
    if not nonzero:
        return total, r_max, 0.0
    if q is None or q >= 1:
        raise DivergenceError(f"characteristic series does not decay within r_max={r_max}")
    return total, r_max, float(nonzero[-1][1] * q / (1 - q))


def _decay_ratio(nonzero):
    """Worst per-step decay factor over the last few nonzero terms."""
    recent = nonzero[-6:]
    if len(recent) < 3:
        return None
    out = 0.0
    for (r0, a), (r1, b) in zip(recent, recent[1:]):
        out = max(out, float((b / a) ** (mpmath.mpf(1) / (r1 - r0))))
    return out


def _q_to_real(v):
    return mpmath.mpf(int(v.numerator)) / int(v.denominator)


class _LazyChar:
    """Characteristic functions computed on demand from value callables."""

    def __init__(self, scaled, unscaled):
        self.scaled, self.unscaled = scaled, unscaled
        self.a, self.b, self.L = [], [], []
        self.exact = True

    def __call__(self, r):
        while len(self.L) <= r:
            k = len(self.L)
            a, b = self.scaled(k), self.unscaled(k)
            if self.exact and not (is_exact(a) and is_exact(b)):
                self.exact = False
                self.a = [_q_to_real(v) for v in self.a]
                self.b = [_q_to_real(v) for v in self.b]
                self.L = [_q_to_real(v) for v in self.L]
            if self.exact:
                a = gmpy2.mpq(a.numerator, a.denominator)
                b = gmpy2.mpq(b.numerator, b.denominator)
            else:
                a, b = to_real(a), to_real(b)
            self.a.append(a)
            self.b.append(b)
            acc = a
            for j in range(k):
                bj = self.b[k - j]
                if bj:
                    acc -= self.L[j] * bj
            self.L.append(acc)
        v = self.L[r]
        if self.exact:
            return Fraction(int(v.numerator), int(v.denominator))
        return v


def renorm_series(f: MultFn, p: int, m: int, r_max: int = DEFAULT_R_MAX,
                  tol=DEFAULT_TOL) -> RenormResult:
    """``R_inf`` as the truncated characteristic series ``sum L_r p^(-a1 r)``."""
    if r_max < 1:
        raise ValueError("r_max must be >= 1")
    if m == 0:
        return _one("series", f.a1)
    x = _x_for(f.a1, p)
    char = _LazyChar(lambda r: f.value(p, m + r), lambda r: f.value(p, r))
    val, used, est = series_from_char(char, x, r_max, tol)
    return RenormResult(val, "series", r_max=used, tol=tol, truncation_estimate=est,
                        a1_used=f.a1, terms_used=used + 1)


def renorm(f: MultFn, p: int, m: int, route: str = "auto", tol=DEFAULT_TOL,
           r_max: int = DEFAULT_R_MAX) -> RenormResult:
    """Dispatch on ``route``; ``auto`` prefers the rational route, then the series."""
    if route == "series":
        return renorm_series(f, p, m, r_max, tol)
    if route == "rational":
        return renorm_rational(f, p, m, tol)
    if route == "closed_form":
        from .closed_forms import renorm_closed_for
        return renorm_closed_for(f, p, m)
    if route != "auto":
        raise ValueError(f"unknown route {route!r}")
    try:
        return renorm_rational(f, p, m, tol)
    except (DivergenceError, PoleError):
        return renorm_series(f, p, m, r_max, tol)


def renorm_multi(f: MultFn, scales: Sequence[tuple[int, int]], tol=DEFAULT_TOL) -> RenormResult:
    """Product of per-prime renormalizations over distinct primes."""
    primes = [p for p, _ in scales]
    if len(set(primes)) != len(primes):
        raise ValueError("scales must use distinct primes")
    value: Value = Fraction(1)
    routes, est = set(), 0.0
    for p, m in scales:
        res = renorm(f, p, m, "auto", tol)
        value = value * res.value
        routes.add(res.route)
        est += res.truncation_estimate
    route = routes.pop() if len(routes) == 1 else ("rational" if not routes else "mixed")
    return RenormResult(value, route, truncation_estimate=est, a1_used=f.a1)


# --- product and power forms -----------------------------------------------------

def renorm_product(fs: Sequence[MultFn], ms: Sequence[int], p: int, a1,
                   tol=DEFAULT_TOL) -> RenormResult:
    """``U/(1+V)`` for ``sum_k prod_i f_i(k p^m_i)``, ``a1`` of the product."""
    if len(fs) != len(ms) or not fs:
        raise ValueError("fs and ms must be nonempty and of equal length")
    if all(m == 0 for m in ms):
        return _one("rational", a1)
    x = _x_for(a1, p)

    def scaled(r):
        out = Fraction(1)
        for g, m in zip(fs, ms):
            out = out * g.value(p, m + r)
        return out

    def unscaled(r):
        out = Fraction(1)
        for g in fs:
            out = out * g.value(p, r)
        return out

    return _finish_rational(_rational_from(scaled, unscaled, x, tol), a1, tol)


def renorm_product_series(fs, ms, p, a1, r_max=DEFAULT_R_MAX, tol=DEFAULT_TOL) -> RenormResult:
    if all(m == 0 for m in ms):
        return _one("series", a1)
    x = _x_for(a1, p)

    def scaled(r):
        out = Fraction(1)
        for g, m in zip(fs, ms):
            out = out * g.value(p, m + r)
        return out

    def unscaled(r):
        out = Fraction(1)
        for g in fs:
            out = out * g.value(p, r)
        return out

    val, used, est = series_from_char(_LazyChar(scaled, unscaled), x, r_max, tol)
    return RenormResult(val, "series", r_max=used, tol=tol, truncation_estimate=est, a1_used=a1)


def renorm_power(f: MultFn, n: int, p: int, m: int, a1, tol=DEFAULT_TOL) -> RenormResult:
    """``U(f,n;p^m)/(1+V(f,n;p))`` with stride-``n`` prime powers."""
    if n < 1:
        raise ValueError("power n must be >= 1")
    if m == 0:
        return _one("rational", a1)
    x = _x_for(a1, p)
    rep = _rational_from(lambda r: f.value(p, m + n * r), lambda r: f.value(p, n * r), x, tol)
    return _finish_rational(rep, a1, tol)


def renorm_power_series(f: MultFn, n: int, p: int, m: int, a1, r_max=DEFAULT_R_MAX,
                        tol=DEFAULT_TOL) -> RenormResult:
    if m == 0:
        return _one("series", a1)
    x = _x_for(a1, p)
    char = _LazyChar(lambda r: f.value(p, m + n * r), lambda r: f.value(p, n * r))
    val, used, est = series_from_char(char, x, r_max, tol)
    return RenormResult(val, "series", r_max=used, tol=tol, truncation_estimate=est, a1_used=a1)


# --- Dirichlet series ratios ----------------------------------------------------

def _dirichlet_closed(name: str, p: int, m: int, s):
    P = Fraction(p)
    ps = power(p, s)
    y = 1 / ps
    if name == "mu":
        return Fraction(1) if m == 0 else (-ps / (ps - 1) if m == 1 else Fraction(0))
    if name == "mu2":
        return Fraction(1) if m == 0 else (ps / (ps + 1) if m == 1 else Fraction(0))
    if name == "lambda":
        return Fraction((-1) ** m)
    if name == "phi":
        return Fraction(1) if m == 0 else (P - 1) * P ** (m - 1) / (1 - y)
    if name == "sigma0":
        return (m + 1) * (1 - y) + y
    if name == "sigma0^2":
        base = (m + 1) * (1 - y) + y
        return (base**2 + y) / (1 + y)
    return None


def dirichlet_abscissa_for(f: MultFn):
    from .summatory import dirichlet_abscissa
    return dirichlet_abscissa(f)


def dirichlet_ratio(f: MultFn, p: int, m: int, s, route: str = "auto", tol=DEFAULT_TOL,
                    tau_table=None) -> Value:
    """``D(f;p^m,s)/D(f,s) = p^(s m) R_inf(f k^-s; p^m)``.

    ``route="closed"`` uses only catalogued closed forms, ``"rational"``
    only the shifted-descriptor route; ``"auto"`` prefers closed forms.
    """
    s_val = Fraction(s) if is_exact(s) else s
    if to_real(s_val) <= to_real(dirichlet_abscissa_for(f)):
        from .special import DomainError
        raise DomainError(f"s={s} is outside the convergence region for {f.name}")
    if m == 0:
        return Fraction(1)
    if route in ("auto", "closed"):
        val = _dirichlet_closed(f.name, p, m, s_val)
        if val is None and f.name == "tau":
            from .tau import tau_renorm
            val = tau_renorm(p, m, "dirichlet", int(f.value(p, 1)), s_val)
        if val is not None:
            return val
        if route == "closed":
            raise KeyError(f"no closed-form Dirichlet ratio for {f.name}")
    g = shifted(f, s_val, a1=0)
    try:
        res = renorm_rational(g, p, m, tol)
    except (DivergenceError, PoleError):
        res = renorm_series(g, p, m, tol=tol)
    return power(p, s_val * m) * res.value


def dirichlet_ratio_power(f: MultFn, n: int, p: int, m: int, s, tol=DEFAULT_TOL) -> Value:
    """``sum_k f(k^n p^m) k^-s / sum_k f(k^n) k^-s`` via the stride-``n`` route."""
    s_val = Fraction(s) if is_exact(s) else s
    per = s_val / n
    g = shifted(f, per, a1=0)
    return power(p, per * m) * renorm_power(g, n, p, m, 0, tol).value


# --- Euler product of the double sum --------------------------------------------

def g2_euler_product(f: MultFn, m_max: int, prime_cutoff: int, tol=DEFAULT_TOL):
    """``prod_{p <= cutoff} sum_{m=0}^{m_max} R_inf(f; p^m)``.

    The inner sum must show decaying terms; otherwise :class:`DivergenceError`.
    """
    def factor(p):
        total = Fraction(1)
        last = None
        for m in range(1, m_max + 1):
            v = renorm(f, p, m, "auto", tol).value
            total = total + v
            last = v
        if last is not None and m_max >= 3:
            prev = renorm(f, p, m_max - 1, "auto", tol).value
            if prev != 0 and abs(to_real(last)) > abs(to_real(prev)):
                raise DivergenceError(f"inner sum over m does not decay at p={p}")
        return total

    return euler_product(EulerProductSpec(factor, prime_cutoff))
