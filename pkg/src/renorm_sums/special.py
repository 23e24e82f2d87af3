"""Special functions used by the closed-form renormalization catalogue.

Negative-order polylogarithms are exact rationals (Eulerian-polynomial
form); hypergeometric series, zeta values and Euler products are Reals.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Optional, Sequence

import mpmath

from .sieve import sieve_spf
from .values import Value, is_exact, to_real

HYPERGEOMETRIC_MAX_TERMS = 10**5


class DomainError(ValueError):
    pass


class ConvergenceError(ArithmeticError):
    pass


# --- partitions -------------------------------------------------------------

_partitions: list[int] = [1]
_partitions_lock = threading.Lock()


def partition(n: int) -> int:
    """Unrestricted partition number, by the pentagonal-number recurrence."""
    if n < 0:
        return 0
    if n < len(_partitions):
        return _partitions[n]
    with _partitions_lock:
        table = _partitions
        for k in range(len(table), n + 1):
            total = 0
            j = 1
            while True:
                g1 = j * (3 * j - 1) // 2
                if g1 > k:
                    break
                sign = 1 if j % 2 else -1
                total += sign * table[k - g1]
                g2 = j * (3 * j + 1) // 2
                if g2 <= k:
                    total += sign * table[k - g2]
                j += 1
            table.append(total)
    return _partitions[n]


def euler_function(x, tol=None) -> mpmath.mpf:
    """``Q(x) = prod_{j>=1} (1 - x**j)`` for ``|x| < 1``."""
    x = to_real(x)
    if abs(x) >= 1:
        raise DomainError("Q(x) needs |x| < 1")
    tol = tol if tol is not None else mpmath.eps
    prod = mpmath.mpf(1)
    xj = x
    while abs(xj) > tol:
        prod *= 1 - xj
        xj *= x
    return prod


# --- negative-order polylogarithm --------------------------------------------

def _eulerian_row(n: int) -> list[int]:
    row = [1]
    for k in range(2, n + 1):
        nxt = [0] * k
        for j in range(k):
            left = row[j - 1] if j >= 1 else 0
            here = row[j] if j < len(row) else 0
            nxt[j] = (j + 1) * here + (k - j) * left
        row = nxt
    return row


def polylog_neg(k: int, x) -> Value:
    """``Li_{-k}(x) = sum_{j>=1} j**k x**j`` in closed form, ``0 <= x < 1``.

    Uses ``Li_{-k}(x) = x * A_k(x) / (1 - x)**(k + 1)`` with the Eulerian
    polynomial ``A_k``; exact whenever ``x`` is rational.
    """
    if k < 0:
        raise DomainError("order must be a nonnegative integer")
    if x < 0 or x >= 1:
        raise DomainError("polylog_neg needs 0 <= x < 1")
    if is_exact(x):
        x = Fraction(x)
    one = Fraction(1) if is_exact(x) else mpmath.mpf(1)
    if k == 0:
        return x / (one - x)
    poly = sum(a * x**j for j, a in enumerate(_eulerian_row(k)))
    return x * poly / (one - x) ** (k + 1)


def polylog_neg_series(k: int, x, terms: int) -> Value:
    """Truncated defining series; kept as an independent check."""
    return sum(Fraction(j) ** k * x**j for j in range(1, terms + 1))


# --- hypergeometric series ----------------------------------------------------

def hypergeometric(a: Sequence, b: Sequence, z, tol=None, max_terms=HYPERGEOMETRIC_MAX_TERMS):
    """Generalized ``pFq(a; b; z)`` by direct summation of its series."""
    for bj in b:
        if is_exact(bj) and bj <= 0 and Fraction(bj).denominator == 1:
            raise DomainError("lower parameter is a nonpositive integer")
    a = [to_real(v) for v in a]
    b = [to_real(v) for v in b]
    z = to_real(z)
    if len(a) == len(b) + 1 and abs(z) >= 1:
        raise DomainError("series needs |z| < 1")
    tol = to_real(tol) if tol is not None else mpmath.eps
    term = mpmath.mpf(1)
    total = mpmath.mpf(1)
    for k in range(max_terms):
        num = mpmath.fprod(ai + k for ai in a)
        if num == 0:
            return total
        term = term * num / mpmath.fprod(bj + k for bj in b) * z / (k + 1)
        total += term
        if abs(term) <= tol * max(abs(total), 1):
            return total
    raise ConvergenceError(f"hypergeometric series did not converge in {max_terms} terms")


def hyp2f1(a, b, c, z, tol=None):
    return hypergeometric([a, b], [c], z, tol)


def hyp3f2(a1, a2, a3, b1, b2, z, tol=None):
    return hypergeometric([a1, a2, a3], [b1, b2], z, tol)


# --- zeta and products ---------------------------------------------------------

def zeta(s) -> mpmath.mpf:
    s = to_real(s)
    if s <= 1:
        raise DomainError("zeta is only evaluated for s > 1")
    return mpmath.zeta(s)


def zeta_product(l_max: int) -> mpmath.mpf:
    """``prod_{l=2}^{l_max} zeta(l)``; the factors approach 1 like 2**-l."""
    return mpmath.fprod(zeta(l) for l in range(2, l_max + 1))


@dataclass(frozen=True)
class EulerProductSpec:
    per_prime_factor: Callable[[int], Value]
    prime_cutoff: int
    # estimate of sum_{p > cutoff} log(factor(p)), given the cutoff
    tail_estimate: Optional[Callable[[int], Value]] = None


@dataclass(frozen=True)
class EulerProduct:
    value: mpmath.mpf
    cutoff: int
    log_tail: Optional[mpmath.mpf]

    @property
    def cutoff_only(self) -> bool:
        return self.log_tail is None

    @property
    def extrapolated(self) -> mpmath.mpf:
        return self.value if self.log_tail is None else self.value * mpmath.exp(self.log_tail)


def euler_product(spec: EulerProductSpec) -> EulerProduct:
    """Product of ``per_prime_factor(p)`` over primes ``p <= cutoff``.

    Accumulated as a sum of logarithms; a nonpositive factor is multiplied
    in directly and ends the log accumulation's sign bookkeeping.
    """
    if spec.prime_cutoff < 2:
        raise DomainError("prime cutoff must be >= 2")
    sign = 1
    logs = []
    for p in sieve_spf(spec.prime_cutoff).primes:
        v = to_real(spec.per_prime_factor(int(p)))
        if v == 0:
            return EulerProduct(mpmath.mpf(0), spec.prime_cutoff, None)
        if v < 0:
            sign = -sign
        logs.append(mpmath.log(abs(v)))
    value = sign * mpmath.exp(mpmath.fsum(logs))
    tail = None
    if spec.tail_estimate is not None:
        tail = to_real(spec.tail_estimate(spec.prime_cutoff))
    return EulerProduct(value, spec.prime_cutoff, tail)


# --- helper sums of the divisor / partition catalogue ------------------------

def S_helper(n: int, p: int, t) -> Value:
    """``sum_{k=1}^n C(n,k) t**(n-k) Li_{-k}(1/p) + t**n / (1 - 1/p)``.

    Equals ``sum_{r>=0} (r + t)**n p**-r``.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    x = Fraction(1, p)
    t = Fraction(t) if is_exact(t) else t
    total = t**n / (1 - x)
    for k in range(1, n + 1):
        total += comb(n, k) * t ** (n - k) * polylog_neg(k, x)
    return total


def T_helper(p: int, t: int, tol=None) -> mpmath.mpf:
    """``sum_{k>=t} p**-k / P(k)`` with ``P`` the partition function."""
    if p < 2:
        raise DomainError("p must be >= 2")
    tol = to_real(tol) if tol is not None else mpmath.eps
    total = mpmath.mpf(0)
    k = t
    while True:
        term = mpmath.mpf(1) / (mpmath.power(p, k) * partition(k))
        total += term
        if term <= tol * total:
            return total
        k += 1
