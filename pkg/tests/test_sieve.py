import math

import pytest
from hypothesis import given, strategies as st

from renorm_sums.sieve import (
    CapacityError, MAX_LIMIT, factorize, primes_up_to, sieve_spf, trial_division_is_prime,
)


def test_small_table_entries():
    t = sieve_spf(10)
    assert (t[9], t[10], t[7]) == (3, 2, 7)
    assert sieve_spf(2)[2] == 2


def test_large_prime_entry(big_sieve):
    assert trial_division_is_prime(999983)
    assert big_sieve[999983] == 999983


@pytest.mark.parametrize("k, expected", [
    (12, [(2, 2), (3, 1)]),
    (7, [(7, 1)]),
    (360, [(2, 3), (3, 2), (5, 1)]),
    (1, []),
])
def test_factorize_examples(k, expected):
    assert factorize(k, sieve_spf(400)) == expected


def test_limit_validation():
    with pytest.raises(ValueError):
        sieve_spf(1)
    with pytest.raises(CapacityError):
        sieve_spf(MAX_LIMIT + 1)


def test_factorize_beyond_limit():
    with pytest.raises(IndexError):
        factorize(101, sieve_spf(100))
    with pytest.raises(ValueError):
        factorize(0, sieve_spf(100))


@given(st.integers(min_value=2, max_value=200_000))
def test_spf_is_least_prime_divisor(small_sieve, k):
    p = small_sieve[k]
    assert k % p == 0 and trial_division_is_prime(p)
    assert all(k % d for d in range(2, min(p, math.isqrt(k) + 1)))


@given(st.integers(min_value=1, max_value=200_000))
def test_factorization_reconstructs(small_sieve, k):
    fac = factorize(k, small_sieve)
    assert math.prod(p**r for p, r in fac) == k
    assert [p for p, _ in fac] == sorted({p for p, _ in fac})
    assert all(trial_division_is_prime(p) and r >= 1 for p, r in fac)


def test_prime_list_matches_trial_division():
    assert primes_up_to(1000) == [n for n in range(1000 + 1) if trial_division_is_prime(n)]
    assert len(primes_up_to(10**6)) == 78498
