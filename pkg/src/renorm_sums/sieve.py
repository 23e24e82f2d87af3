"""Smallest-prime-factor sieve and factorization."""

from __future__ import annotations

from functools import cached_property
from math import isqrt

import numpy as np

DEFAULT_LIMIT = 10**6
MAX_LIMIT = 2**32 - 1
# entries are uint32; 4 bytes each, plus the lazily built decomposition arrays
MEMORY_BUDGET_BYTES = 2 * 1024**3


class CapacityError(ValueError):
    pass


class SmallestPrimeFactorTable:
    """``spf[k]`` is the least prime dividing ``k`` for ``2 <= k <= limit``.

    Immutable after construction. The decomposition arrays used by bulk
    evaluation (``prime_power_part`` and friends) are built on first use.
    """

    def __init__(self, limit: int):
        if limit < 2:
            raise ValueError("sieve limit must be >= 2")
        if limit > MAX_LIMIT or 16 * (limit + 1) > MEMORY_BUDGET_BYTES:
            raise CapacityError(f"sieve limit {limit} exceeds the memory budget")
        self.limit = limit
        self.spf = _eratosthenes_spf(limit)
        self.spf.setflags(write=False)

    def __repr__(self):
        return f"SmallestPrimeFactorTable(limit={self.limit})"

    def __getitem__(self, k: int) -> int:
        return int(self.spf[k])

    def is_prime(self, k: int) -> bool:
        return k >= 2 and int(self.spf[k]) == k

    @cached_property
    def primes(self) -> np.ndarray:
        ks = np.arange(self.limit + 1, dtype=np.int64)
        return ks[2:][self.spf[2:] == ks[2:]]

    @cached_property
    def _decomposition(self):
        # For each k >= 2: q = spf(k), e = v_q(k), rest = k / q^e.
        n = self.limit
        ks = np.arange(n + 1, dtype=np.int64)
        q = self.spf.astype(np.int64)
        q[:2] = 1
        rest = ks.copy()
        rest[0] = 0
        exp = np.zeros(n + 1, dtype=np.int64)
        mask = ks >= 2
        while mask.any():
            idx = np.nonzero(mask)[0]
            rest[idx] //= q[idx]
            exp[idx] += 1
            mask[idx] = (rest[idx] % q[idx]) == 0
        for arr in (q, exp, rest):
            arr.setflags(write=False)
        return q, exp, rest

    @property
    def least_prime(self) -> np.ndarray:
        return self._decomposition[0]

    @property
    def least_prime_exponent(self) -> np.ndarray:
        return self._decomposition[1]

    @property
    def cofactor(self) -> np.ndarray:
        """``k`` with the full power of its least prime removed."""
        return self._decomposition[2]


def _eratosthenes_spf(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.uint32)
    root = isqrt(limit)
    # Each composite is marked by its least prime because primes are visited
    # in increasing order and only unmarked slots are written.
    for p in range(2, root + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    unmarked = np.nonzero(spf == 0)[0]
    spf[unmarked] = unmarked.astype(np.uint32)
    spf[0] = 0
    spf[1] = 1
    return spf


def sieve_spf(limit: int = DEFAULT_LIMIT) -> SmallestPrimeFactorTable:
    return SmallestPrimeFactorTable(limit)


def factorize(k: int, table: SmallestPrimeFactorTable) -> list[tuple[int, int]]:
    """Prime-power decomposition ``[(p, r), ...]`` with increasing ``p``."""
    if k < 1:
        raise ValueError("factorize expects a positive integer")
    if k == 1:
        return []
    if k > table.limit:
        raise IndexError(f"{k} exceeds sieve limit {table.limit}")
    spf = table.spf
    out = []
    while k > 1:
        p = int(spf[k])
        r = 0
        while k % p == 0:
            k //= p
            r += 1
        out.append((p, r))
    return out


def trial_division_is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    return [int(p) for p in sieve_spf(max(n, 2)).primes]
