"""Ramanujan tau: bulk table, Hecke recursion, identities and renormalizations.

The table is built from ``q * prod (1 - q^k)^24 = q * (eta^3)^8`` where
``eta^3 = sum_k (-1)^k (2k+1) q^(k(k+1)/2)`` is sparse. The dense
accumulator is multiplied by the sparse series eight times, working modulo
a few word-sized primes and reassembling exact integers by CRT.
"""

from __future__ import annotations

import io
import logging
import os
import struct
import threading
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

import mpmath
import numpy as np

from .sieve import primes_up_to, trial_division_is_prime
from .values import Value, power, to_real

log = logging.getLogger(__name__)

DEFAULT_TAU_LIMIT = 3 * 10**5
MEMORY_BUDGET_BYTES = 2 * 1024**3

CACHE_MAGIC = b"RSTAU\x00"
CACHE_VERSION = 1


class TauCapacityError(ValueError):
    pass


def _moduli(count: int) -> list[int]:
    out, n = [], 2**31 - 1
    while len(out) < count:
        if trial_division_is_prime(n):
            out.append(n)
        n -= 2
    return out


# |tau(n)| <= d(n) n^(11/2) < 2^110 for n <= 10^6; four 31-bit moduli give 2^123.
_MODULI = _moduli(4)


def _eta_cubed_terms(n: int) -> list[tuple[int, int]]:
    terms, k = [], 0
    while k * (k + 1) // 2 < n:
        terms.append((k * (k + 1) // 2, (-1) ** k * (2 * k + 1)))
        k += 1
    return terms


def _eta24_mod(n: int) -> np.ndarray:
    """Coefficients of ``prod (1-q^k)^24`` below ``q^n``, one row per modulus."""
    mods = np.array(_MODULI, dtype=np.int64)[:, None]
    terms = _eta_cubed_terms(n)
    acc = np.zeros((len(_MODULI), n), dtype=np.int64)
    for idx, c in terms:
        acc[:, idx] = c
    acc %= mods
    for _ in range(7):
        nxt = np.zeros_like(acc)
        # Partial sums stay below 2^31 * 1600 * (number of terms) < 2^63.
        for idx, c in terms:
            nxt[:, idx:] += c * acc[:, : n - idx]
        acc = nxt % mods
    return acc


def _crt(residues: np.ndarray) -> list[int]:
    mods = _MODULI
    # Garner mixed-radix digits, vectorized; digits < 2^31 so products fit int64.
    digits = [residues[0].astype(np.int64)]
    for i in range(1, len(mods)):
        d = residues[i].astype(np.int64)
        for j in range(i):
            inv = pow(mods[j], -1, mods[i])
            d = ((d - digits[j]) % mods[i]) * inv % mods[i]
        digits.append(d)
    total = 1
    for m in mods:
        total *= m
    half = total // 2
    cols = [dig.tolist() for dig in digits]
    out = []
    for vals in zip(*cols):
        v, scale = 0, 1
        for dig, m in zip(vals, mods):
            v += dig * scale
            scale *= m
        out.append(v - total if v > half else v)
    return out


class TauTable:
    """``tau(1..limit)`` as exact Python integers; index 0 is unused."""

    def __init__(self, limit: int, values: Optional[list[int]] = None):
        if limit < 1:
            raise ValueError("tau limit must be >= 1")
        if values is None:
            if 8 * len(_MODULI) * 2 * limit > MEMORY_BUDGET_BYTES:
                raise TauCapacityError(f"tau limit {limit} exceeds the memory budget")
            values = [0] + _crt(_eta24_mod(limit))
        if len(values) != limit + 1:
            raise ValueError("value list does not match limit")
        self.limit = limit
        self._values = tuple(values)

    def __repr__(self):
        return f"TauTable(limit={self.limit})"

    def __getitem__(self, n: int) -> int:
        if n < 1 or n > self.limit:
            raise IndexError(f"tau({n}) outside table range 1..{self.limit}")
        return self._values[n]

    @property
    def values(self) -> tuple:
        return self._values

    def prime_power(self, p: int, r: int) -> int:
        return tau_prime_power(p, r, self[p])


def tau_table(limit: int = DEFAULT_TAU_LIMIT) -> TauTable:
    return TauTable(limit)


_default_tables: dict[int, TauTable] = {}
_default_lock = threading.Lock()


def default_tau_table(limit: int = DEFAULT_TAU_LIMIT) -> TauTable:
    """Process-wide table, loaded from the on-disk cache when one is configured.

    The cache directory comes from ``RENORM_SUMS_CACHE``; when unset no file
    is read or written.
    """
    with _default_lock:
        for lim, tab in _default_tables.items():
            if lim >= limit:
                return tab if lim == limit else TauTable(limit, list(tab.values[: limit + 1]))
        cache_dir = os.environ.get("RENORM_SUMS_CACHE")
        path = Path(cache_dir) / f"tau_{limit}.bin" if cache_dir else None
        tab = load_tau_table(path, limit) if path is not None and path.exists() else None
        if tab is None:
            tab = TauTable(limit)
            if path is not None:
                path.parent.mkdir(parents=True, exist_ok=True)
                save_tau_table(tab, path)
        _default_tables[limit] = tab
        return tab


# --- cache file -----------------------------------------------------------------

def _write_uleb(buf, n: int):
    while True:
        byte = n & 0x7F
        n >>= 7
        if n:
            buf.write(bytes([byte | 0x80]))
        else:
            buf.write(bytes([byte]))
            return


def _read_uleb(buf) -> int:
    shift = out = 0
    while True:
        b = buf.read(1)
        if not b:
            raise ValueError("truncated cache record")
        out |= (b[0] & 0x7F) << shift
        if b[0] < 0x80:
            return out
        shift += 7


def save_tau_table(table: TauTable, path) -> None:
    buf = io.BytesIO()
    buf.write(CACHE_MAGIC)
    buf.write(struct.pack("<HQ", CACHE_VERSION, table.limit))
    for v in table.values[1:]:
        nbytes = (v.bit_length() + 8) // 8
        _write_uleb(buf, nbytes)
        buf.write(v.to_bytes(nbytes, "little", signed=True))
    tmp = Path(str(path) + ".tmp")
    tmp.write_bytes(buf.getvalue())
    os.replace(tmp, path)


def load_tau_table(path, limit: Optional[int] = None) -> Optional[TauTable]:
    """Read a cached table; ``None`` on bad magic/version or a limit mismatch."""
    data = io.BytesIO(Path(path).read_bytes())
    if data.read(len(CACHE_MAGIC)) != CACHE_MAGIC:
        return None
    version, stored = struct.unpack("<HQ", data.read(10))
    if version != CACHE_VERSION or (limit is not None and stored != limit):
        return None
    values = [0]
    for _ in range(stored):
        nbytes = _read_uleb(data)
        values.append(int.from_bytes(data.read(nbytes), "little", signed=True))
    return TauTable(stored, values)


# --- prime powers and identities ---------------------------------------------

def tau_prime_power(p: int, r: int, tau_p: int) -> int:
    """``tau(p^r)`` from ``tau(p)`` by the Hecke recursion."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    prev, cur = 1, tau_p
    if r == 0:
        return 1
    w = p**11
    for _ in range(r - 1):
        prev, cur = cur, tau_p * cur - w * prev
    return cur


def tau_prime_power_poly(p: int, r: int, tau_p: int) -> int:
    """Explicit polynomials in ``tau(p)`` for ``r <= 4``; a recursion-free check."""
    t, w = tau_p, p**11
    forms = {
        0: 1,
        1: t,
        2: t**2 - w,
        3: t**3 - 2 * w * t,
        4: t**4 - 3 * w * t**2 + w**2,
    }
    if r not in forms:
        raise ValueError("explicit form available only for r <= 4")
    return forms[r]


@dataclass(frozen=True)
class IdentityCheck:
    passed: bool
    lhs: int
    rhs: int


def tau_identity_check(p: int, m: int, n: int, tau_p: int) -> IdentityCheck:
    """``tau(p^(m+n)) == tau(p^m) tau(p^n) - p^11 tau(p^(m-1)) tau(p^(n-1))``."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be >= 1")
    tp = lambda r: tau_prime_power(p, r, tau_p)  # noqa: E731
    lhs = tp(m + n)
    rhs = tp(m) * tp(n) - p**11 * tp(m - 1) * tp(n - 1)
    return IdentityCheck(lhs == rhs, lhs, rhs)


@dataclass(frozen=True)
class DeligneScan:
    ratios: list  # (p, tau(p^4) / (4 p^22) as float)
    first_violation: Optional[int]  # 1-based index into the primes, or None

    @property
    def violation_prime(self) -> Optional[int]:
        return None if self.first_violation is None else self.ratios[self.first_violation - 1][0]


def deligne_quartic_scan(prime_count: int, table: Optional[TauTable] = None) -> DeligneScan:
    """Ratios ``tau(p^4)/(4 p^22)`` over the first ``prime_count`` primes.

    The violation test ``|tau(p^4)| >= 4 p^22`` is an exact integer comparison.
    """
    bound = 16
    while True:
        ps = primes_up_to(bound)
        if len(ps) >= prime_count:
            break
        bound *= 2
    ps = ps[:prime_count]
    if table is None:
        table = default_tau_table(max(ps[-1], 2))
    ratios, first = [], None
    for i, p in enumerate(ps, start=1):
        t4 = tau_prime_power(p, 4, table[p])
        cap = 4 * p**22
        ratios.append((p, float(Fraction(t4, cap))))
        if first is None and abs(t4) >= cap:
            first = i
    return DeligneScan(ratios, first)


def tau_renorm(p: int, m: int, variant: str, tau_p: int, s=None) -> Value:
    """Closed-form tau renormalizations.

    ``variant``:
      * ``"dirichlet"``: ratio of scaled to unscaled ``sum tau(k) k^-s``
        (requires ``s > 13/2``).
      * ``"tau_sq"``: ``R_inf(tau^2; p^m)`` with growth exponent 12.
      * ``"tau_sq_normalized"``: ``p^(25m/2) R_inf(tau^2 k^(-25/2); p^m)``.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if variant not in ("dirichlet", "tau_sq", "tau_sq_normalized"):
        raise ValueError(f"unknown tau variant {variant!r}")
    if variant == "dirichlet":
        if s is None or to_real(s) <= 6.5:
            raise ValueError("the tau Dirichlet series needs s > 13/2")
    if m == 0:
        return Fraction(1)
    t_m = tau_prime_power(p, m, tau_p)
    t_prev = tau_prime_power(p, m - 1, tau_p)
    if variant == "dirichlet":
        return t_m - t_prev * power(p, 11 - (Fraction(s) if isinstance(s, (int, Fraction)) else s))
    if variant == "tau_sq":
        return Fraction(t_m**2 + p**10 * t_prev**2) - Fraction(2 * tau_p * t_prev * t_m, p + 1)
    p_half = mpmath.sqrt(p)
    return (t_m**2 + p**9 * p_half * t_prev**2
            - 2 * tau_p * t_prev * t_m / (p * p_half + 1))
