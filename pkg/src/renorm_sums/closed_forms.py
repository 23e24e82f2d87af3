"""Closed-form renormalization functions for named families.

Each formula is a function ``(p, m, **params) -> Value``; rational formulas
return exact :class:`~fractions.Fraction` values, those involving logs,
hypergeometric series, ``Q(x)`` or real exponents return Reals. ``m = 0``
always gives exactly 1, so formulas only need to hold for ``m >= 1``.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Callable, Optional

import mpmath

from .functions import MultFn
from .renorm import RenormResult
from .special import (
    DomainError,
    S_helper,
    T_helper,
    euler_function,
    hyp2f1,
    hyp3f2,
    partition,
    polylog_neg,
)
from .tau import tau_renorm
from .values import Value, is_exact, power, to_real

Formula = Callable[..., Value]


def _exact_param(v) -> Fraction:
    if not is_exact(v):
        raise DomainError("parameter must be rational here")
    return Fraction(v)


# --- totients ------------------------------------------------------------------

def ku_phiv(p, m, u, v):
    P = Fraction(p)
    if u + v >= -1:
        return P ** (m * (u + v) + 1) * (P - 1) ** (v - 1) / (P**v + (P - 1) ** (v - 1))
    return P ** ((m - 1) * (u + v)) * (P - 1) ** v / (P ** (-u) - P**v + (P - 1) ** v)


def ku_jv(p, m, u, v):
    if v < 1:
        raise DomainError("Jordan index must be a positive integer")
    P = Fraction(p)
    if u + v >= -1:
        return (P**v - 1) * P ** (m * (u + v) + 1) / (P ** (v + 1) - 1)
    return (P**v - 1) * P ** ((m - 1) * (u + v)) / (P ** (-u) - 1)


def ku_psiv(p, m, u, v):
    P = Fraction(p)
    if u + v >= -1:
        return P ** (m * (u + v) + 1) * (P + 1) ** v / ((P + 1) ** v + (P - 1) * P**v)
    return P ** ((m - 1) * (u + v)) * (P + 1) ** v / ((P + 1) ** v - P**v + P ** (-u))


def phi_over_psi_pow(p, m, v):
    P = Fraction(p)
    return P * (P - 1) ** (v - 1) / ((P - 1) ** (v - 1) + (P + 1) ** v)


# --- divisor functions -----------------------------------------------------------

def _base(p, *exponents):
    """``p`` as a Fraction when every exponent is integral, else as a Real."""
    if all(is_exact(e) and Fraction(e).denominator == 1 for e in exponents):
        return Fraction(p)
    return mpmath.mpf(p)


def _pow(P, e):
    if isinstance(P, Fraction):
        return P ** int(e)
    return mpmath.power(P, to_real(e))


def sigma_shifted(p, m, a, s):
    if not a > 0:
        raise DomainError("needs a > 0")
    P = _base(p, a, s)
    pa1 = _pow(P, a * (m + 1))
    num = _pow(P, a * (m + 1) + s) - pa1 - _pow(P, s) + _pow(P, a)
    return num / (_pow(P, (m + 1) * s) * (_pow(P, a) - 1))


def sigma_pos(p, m, a):
    if not a > 0:
        raise DomainError("needs a > 0")
    P = _base(p, a)
    return (_pow(P, a * (m + 1) + 1) - _pow(P, a * m) - P + 1) / (P * (_pow(P, a) - 1))


def sigma_neg(p, m, a):
    if not a < 0:
        raise DomainError("needs a < 0")
    P = _base(p, a)
    return (_pow(P, a * m + 1) - _pow(P, a * m) - _pow(P, 1 - a) + 1) / (
        _pow(P, 1 - a) * (_pow(P, a) - 1))


def sigma0_pow(p, m, n):
    return S_helper(n, p, m + 1) / S_helper(n, p, 1)


def sigma0_sigma(p, m, a):
    if not a > 0:
        raise DomainError("needs a > 0")
    P = _base(p, a)
    pa, pam = _pow(P, a), _pow(P, a * m)
    pa1 = pa * P
    num = (pam * p * (pa1 - 1) ** 2 - pa1 * (P - 1) ** 2
           + m * (P - 1) * (pa1 - 1) * (pam * (pa1 - 1) - P + 1))
    return num / (P * (pa - 1) * (pa1 * P - 1))


def sigma_sq(p, m, a):
    if not a > 0:
        raise DomainError("needs a > 0")
    P = _base(p, a)
    pa, pam = _pow(P, a), _pow(P, a * m)
    num = (P - 1) * (pa * P - 1) + pam * (pa * pa * P - 1) * (pam * (pa * P - 1) - 2 * (P - 1))
    return num / (P * (pa - 1) ** 2 * (pa * P + 1))


def sigma0_sq_limit(p, m):
    """``a -> 0`` limit of the squared-divisor formula."""
    P = Fraction(p)
    return (P + (m * (P - 1) + P) ** 2) / (P * (P + 1))


def inv_sigma0(p, m):
    z = Fraction(1, p)
    return -hyp2f1(m + 1, 1, m + 2, z) / ((m + 1) * p * mpmath.log(1 - to_real(z)))


def inv_sigma0_m1(p, m):
    if m != 1:
        raise DomainError("this form holds for m = 1 only")
    return p + 1 / mpmath.log(1 - mpmath.mpf(1) / p)


def sigma1_over_sigma0(p, m):
    h1 = hyp2f1(m + 1, 1, m + 2, Fraction(1, p))
    h2 = hyp2f1(m + 1, 1, m + 2, Fraction(1, p * p))
    return (mpmath.power(p, m + 1) * h1 - h2) / ((m + 1) * p**2 * mpmath.log(1 + mpmath.mpf(1) / p))


def sigma1_over_sigma0_m1(p, m):
    if m != 1:
        raise DomainError("this form holds for m = 1 only")
    return p**2 - (p - 1) / mpmath.log(1 + mpmath.mpf(1) / p)


def sigma1_over_phi(p, m):
    P = Fraction(p)
    return P**3 * (1 + P - P ** (-m)) / (P**4 - P**3 + P**2 + P - 1)


def sigma1_over_psi(p, m):
    P = Fraction(p)
    return P**3 * (1 + P - P ** (-m)) / (P**4 + P**3 - P**2 - P + 1)


# --- prime divisor, Piltz, two squares ---------------------------------------------

def beta(p, m):
    P = Fraction(p)
    return P * (m * (P - 1) + 1) / (P**2 - P + 1)


def beta_shifted(p, m, s):
    ps = power(p, s)
    return power(p, (1 - m) * s) * (m * (ps - 1) + 1) / (ps * ps - ps + 1)


def beta_pow(p, m, n):
    return S_helper(n, p, m) / (1 + polylog_neg(n, Fraction(1, p)))


def _terminating_2f1(a, b, c, z) -> Fraction:
    """Exact ``2F1`` when ``b`` is a nonpositive integer (a finite sum)."""
    if not (isinstance(b, int) and b <= 0):
        raise DomainError("series does not terminate")
    total, term = Fraction(0), Fraction(1)
    for k in range(-b + 1):
        total += term
        term = term * (a + k) * (b + k) / ((c + k) * (k + 1)) * z
    return total


def piltz_shifted(p, m, n, s):
    z = power(p, -s)
    if is_exact(z):
        h = _terminating_2f1(m, 1 - n, m + 1, Fraction(z))
    else:
        h = hyp2f1(m, 1 - n, m + 1, z)
    return power(p, -s * m) * comb(n + m - 1, m) * h


def piltz(p, m, n):
    return comb(n + m - 1, m) * _terminating_2f1(m, 1 - n, m + 1, Fraction(1, p))


def piltz_sq(p, m, n):
    z = Fraction(1, p)
    return comb(n + m - 1, m) ** 2 * hyp3f2(1, m + n, m + n, m + 1, m + 1, z) / hyp2f1(n, n, 1, z)


def inv_piltz(p, m, n):
    z = Fraction(1, p)
    return (n * p * hyp2f1(1, m + 1, m + n, z)
            / (comb(n + m - 1, m) * (n * p + hyp2f1(2, 1, n + 1, z))))


def r2(p, m):
    if p == 2:
        return Fraction(1)
    if p % 4 == 1:
        return Fraction(m + 1) - Fraction(m, p)
    return Fraction(1) if m % 2 == 0 else Fraction(1, p)


def r2_over_k(p, m):
    return Fraction(p) ** (-m) * r2(p, m)


# --- Ramanujan sums and abelian groups ----------------------------------------------

def ramanujan_sum_ratio(p, m, n, s):
    """``sum_q C_{p^m q}(n) q^-s / sum_q C_q(n) q^-s``.

    Written in terms of ``a = v_p(n)``: the local factor of the unscaled
    series is ``(1 - p^-s)(1 - z^(a+1))/(1 - z)`` with ``z = p^(1-s)``.
    """
    a = 0
    while n % p**(a + 1) == 0:
        a += 1
    y, z = power(p, -s), power(p, 1 - s)
    P = Fraction(p)
    if m > a + 1:
        return Fraction(0)
    if m == a + 1:
        # only C_{p^(a+1)}(n) = -p^a survives in the scaled series
        return -P**a / ((1 - y) * (1 - z ** (a + 1)) / (1 - z))
    num = (1 - 1 / P) * P**m - y ** (-m) * z ** (a + 1) * (1 - y)
    return num / ((1 - y) * (1 - z ** (a + 1)))


def ramanujan_sum(p, m, n, s):
    """``R_inf`` of ``q -> C_q(n) q^-s``: the ratio above times ``p^(-s m)``."""
    return power(p, -s * m) * ramanujan_sum_ratio(p, m, n, s)


def alpha(p, m):
    Q = euler_function(mpmath.mpf(1) / p)
    head = mpmath.fsum(mpmath.mpf(partition(k)) / mpmath.power(p, k) for k in range(m))
    return mpmath.power(p, m) * (1 - Q * head)


def inv_alpha(p, m):
    return mpmath.power(p, m) * T_helper(p, m) / T_helper(p, 0)


# --- Dirichlet-shifted families -----------------------------------------------------

def mu_shifted(p, m, s):
    ps = power(p, s)
    return -1 / (ps - 1) if m == 1 else Fraction(0)


def mu2_shifted(p, m, s):
    ps = power(p, s)
    return 1 / (ps + 1) if m == 1 else Fraction(0)


def squarefree(p, m):
    return Fraction(p, p + 1) if m == 1 else Fraction(0)


def omega_power(p, m, c):
    """``c**omega``: constant on prime powers, so independent of ``m``."""
    return Fraction(c * p, p + c - 1)


def lambda_shifted(p, m, s):
    return (-1) ** m * power(p, -s * m)


def liouville(p, m):
    return Fraction((-1) ** m)


def sigma0_shifted(p, m, s):
    y = power(p, -s)
    return power(p, -s * m) * ((m + 1) * (1 - y) + y)


def phi_shifted(p, m, s):
    P = _base(p, s)
    return _pow(P, -s * m) * (P - 1) * P ** (m - 1) / (1 - _pow(P, -s))


# --- tau -----------------------------------------------------------------------------

def tau_sq(p, m, tau_p):
    return tau_renorm(p, m, "tau_sq", tau_p)


def tau_sq_normalized(p, m, tau_p):
    return tau_renorm(p, m, "tau_sq_normalized", tau_p) / mpmath.power(p, mpmath.mpf(25) * m / 2)


def tau_shifted(p, m, tau_p, s):
    return power(p, -s * m) * tau_renorm(p, m, "dirichlet", tau_p, s)


FORMULAS: dict[str, tuple[Formula, bool]] = {
    # id: (function, transcendental?)
    "ku_phiv": (ku_phiv, False),
    "ku_jv": (ku_jv, False),
    "ku_psiv": (ku_psiv, False),
    "phi_over_psi_pow": (phi_over_psi_pow, False),
    "sigma_shifted": (sigma_shifted, False),
    "sigma_pos": (sigma_pos, False),
    "sigma_neg": (sigma_neg, False),
    "sigma0_pow": (sigma0_pow, False),
    "sigma0_sigma": (sigma0_sigma, False),
    "sigma_sq": (sigma_sq, False),
    "sigma0_sq_limit": (sigma0_sq_limit, False),
    "inv_sigma0": (inv_sigma0, True),
    "inv_sigma0_m1": (inv_sigma0_m1, True),
    "sigma1_over_sigma0": (sigma1_over_sigma0, True),
    "sigma1_over_sigma0_m1": (sigma1_over_sigma0_m1, True),
    "sigma1_over_phi": (sigma1_over_phi, False),
    "sigma1_over_psi": (sigma1_over_psi, False),
    "beta": (beta, False),
    "beta_shifted": (beta_shifted, False),
    "beta_pow": (beta_pow, False),
    "piltz_shifted": (piltz_shifted, False),
    "piltz": (piltz, False),
    "piltz_sq": (piltz_sq, True),
    "inv_piltz": (inv_piltz, True),
    "r2": (r2, False),
    "r2_over_k": (r2_over_k, False),
    "ramanujan_sum": (ramanujan_sum, False),
    "ramanujan_sum_ratio": (ramanujan_sum_ratio, False),
    "alpha": (alpha, True),
    "inv_alpha": (inv_alpha, True),
    "mu_shifted": (mu_shifted, False),
    "mu2_shifted": (mu2_shifted, False),
    "squarefree": (squarefree, False),
    "omega_power": (omega_power, False),
    "lambda_shifted": (lambda_shifted, False),
    "lambda": (liouville, False),
    "sigma0_shifted": (sigma0_shifted, False),
    "phi_shifted": (phi_shifted, False),
    "tau_sq": (tau_sq, False),
    "tau_sq_normalized": (tau_sq_normalized, True),
    "tau_shifted": (tau_shifted, False),
}


def is_transcendental(formula_id: str, params: Optional[dict] = None) -> bool:
    fn, trans = FORMULAS[formula_id]
    if trans:
        return True
    return any(not is_exact(v) for v in (params or {}).values() if not isinstance(v, str))


def renorm_closed(formula_id: str, p: int, m: int, params: Optional[dict] = None) -> RenormResult:
    """Evaluate a catalogued closed form; ``m = 0`` gives exactly 1."""
    if formula_id not in FORMULAS:
        raise KeyError(f"unknown closed form {formula_id!r}")
    if m < 0:
        raise DomainError("m must be nonnegative")
    params = dict(params or {})
    if m == 0:
        return RenormResult(Fraction(1), "closed_form")
    fn, _ = FORMULAS[formula_id]
    value = fn(p, m, **params)
    if isinstance(value, int):
        value = Fraction(value)
    return RenormResult(value, "closed_form")


# descriptor name -> (formula id, params); tau entries read tau(p) at call time
CLOSED_FORM_OF: dict[str, tuple[str, dict]] = {
    "phi": ("ku_phiv", {"u": 0, "v": 1}),
    "psi": ("ku_psiv", {"u": 0, "v": 1}),
    "J2": ("ku_jv", {"u": 0, "v": 2}),
    "J3": ("ku_jv", {"u": 0, "v": 3}),
    "lambda": ("lambda", {}),
    "sigma0": ("sigma0_pow", {"n": 1}),
    "sigma1": ("sigma_pos", {"a": 1}),
    "sigma2": ("sigma_pos", {"a": 2}),
    "sigma-1": ("sigma_neg", {"a": -1}),
    "sigma-2": ("sigma_neg", {"a": -2}),
    "sigma(1/2)": ("sigma_pos", {"a": Fraction(1, 2)}),
    "sigma0^2": ("sigma0_pow", {"n": 2}),
    "sigma0^3": ("sigma0_pow", {"n": 3}),
    "1/sigma0": ("inv_sigma0", {}),
    "sigma1/sigma0": ("sigma1_over_sigma0", {}),
    "sigma1/phi": ("sigma1_over_phi", {}),
    "sigma1/psi": ("sigma1_over_psi", {}),
    "sigma0*sigma1": ("sigma0_sigma", {"a": 1}),
    "sigma1^2": ("sigma_sq", {"a": 1}),
    "sigma(1/2)^2": ("sigma_sq", {"a": Fraction(1, 2)}),
    "d3": ("piltz", {"n": 3}),
    "d4": ("piltz", {"n": 4}),
    "d3^2": ("piltz_sq", {"n": 3}),
    "1/d3": ("inv_piltz", {"n": 3}),
    "beta": ("beta", {}),
    "beta^2": ("beta_pow", {"n": 2}),
    "alpha": ("alpha", {}),
    "1/alpha": ("inv_alpha", {}),
    "r2": ("r2", {}),
    "r2/k": ("r2_over_k", {}),
    "1/phi": ("ku_phiv", {"u": 0, "v": -1}),
    "1/psi": ("ku_psiv", {"u": 0, "v": -1}),
    "k/phi": ("ku_phiv", {"u": 1, "v": -1}),
    "phi/k^2": ("ku_phiv", {"u": -2, "v": 1}),
    "phi^2": ("ku_phiv", {"u": 0, "v": 2}),
    "phi/k^3": ("ku_phiv", {"u": -3, "v": 1}),
    "psi/k": ("ku_psiv", {"u": -1, "v": 1}),
    "psi^2": ("ku_psiv", {"u": 0, "v": 2}),
    "psi/k^4": ("ku_psiv", {"u": -4, "v": 1}),
    "J2/k": ("ku_jv", {"u": -1, "v": 2}),
    "J2/k^5": ("ku_jv", {"u": -5, "v": 2}),
    "phi/psi": ("phi_over_psi_pow", {"v": 1}),
    "(phi/psi)^2": ("phi_over_psi_pow", {"v": 2}),
    "(phi/psi)^-1": ("phi_over_psi_pow", {"v": -1}),
    "mu/k^2": ("mu_shifted", {"s": 2}),
    "mu2/k^2": ("mu2_shifted", {"s": 2}),
    "mu2": ("squarefree", {}),
    "2^omega": ("omega_power", {"c": 2}),
    "3^omega": ("omega_power", {"c": 3}),
    "lambda/k^2": ("lambda_shifted", {"s": 2}),
    "sigma0/k^2": ("sigma0_shifted", {"s": 2}),
    "sigma1/k^3": ("sigma_shifted", {"a": 1, "s": 3}),
    "beta/k^2": ("beta_shifted", {"s": 2}),
    "d3/k^2": ("piltz_shifted", {"n": 3, "s": 2}),
    "C_q(12)/q^2": ("ramanujan_sum", {"n": 12, "s": 2}),
    "C_q(5)/q^3": ("ramanujan_sum", {"n": 5, "s": 3}),
    "tau^2": ("tau_sq", {}),
    "tau/k^7": ("tau_shifted", {"s": 7}),
    "tau^2/k^(25/2)": ("tau_sq_normalized", {}),
}


def closed_form_for(f: MultFn, p: int) -> Optional[tuple[str, dict]]:
    entry = CLOSED_FORM_OF.get(f.name)
    if entry is None:
        return None
    fid, params = entry
    params = dict(params)
    if fid.startswith("tau"):
        params["tau_p"] = f.params["tau_table"][p]
    return fid, params


def renorm_closed_for(f: MultFn, p: int, m: int) -> RenormResult:
    entry = closed_form_for(f, p)
    if entry is None:
        raise KeyError(f"no closed form catalogued for {f.name}")
    fid, params = entry
    return renorm_closed(fid, p, m, params)

