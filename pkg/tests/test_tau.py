from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from renorm_sums.sieve import primes_up_to
from renorm_sums.tau import (
    TauTable, deligne_quartic_scan, load_tau_table, save_tau_table, tau_identity_check,
    tau_prime_power, tau_prime_power_poly, tau_renorm, tau_table,
)

KNOWN = {1: 1, 2: -24, 3: 252, 4: -1472, 5: 4830, 6: -6048, 7: -16744, 8: 84480,
         9: -113643, 10: -115920, 11: 534612, 12: -370944, 13: -577738, 23: 18643272,
         24: 21288960}


def test_known_values(small_tau):
    for n, v in KNOWN.items():
        assert small_tau[n] == v


def test_index_bounds():
    t = tau_table(10)
    with pytest.raises(IndexError):
        t[0]
    with pytest.raises(IndexError):
        t[11]
    with pytest.raises(ValueError):
        TauTable(0)


def test_hecke_recursion_matches_table(small_tau):
    for p in primes_up_to(31):
        for r in range(4):
            if p**r <= small_tau.limit:
                assert tau_prime_power(p, r, small_tau[p]) == small_tau[p**r]


def test_explicit_polynomials_agree_with_recursion(small_tau):
    for p in primes_up_to(50):
        for r in range(5):
            assert tau_prime_power_poly(p, r, small_tau[p]) == tau_prime_power(p, r, small_tau[p])
    with pytest.raises(ValueError):
        tau_prime_power_poly(2, 5, -24)


@given(st.integers(1, 70), st.integers(1, 70))
def test_multiplicative_on_coprime_arguments(a, b):
    t = tau_table(4900)
    if gcd(a, b) == 1:
        assert t[a * b] == t[a] * t[b]


@given(st.sampled_from([2, 3, 5, 7, 11]), st.integers(1, 6), st.integers(1, 6))
def test_prime_power_identity(p, m, n):
    t = tau_table(11)
    assert tau_identity_check(p, m, n, t[p]).passed


def test_identity_rejects_zero_exponent():
    with pytest.raises(ValueError):
        tau_identity_check(2, 0, 1, -24)


def test_cache_round_trip(tmp_path):
    t = tau_table(500)
    path = tmp_path / "tau.bin"
    save_tau_table(t, path)
    back = load_tau_table(path)
    assert back.values == t.values
    assert load_tau_table(path, limit=499) is None
    path.write_bytes(b"garbage" + path.read_bytes())
    assert load_tau_table(path) is None


def test_deligne_quartic_scan(full_tau):
    scan = deligne_quartic_scan(480, full_tau)
    assert scan.first_violation == 475
    assert scan.violation_prime == 3371
    assert scan.ratios[474][1] == pytest.approx(1.0118989, abs=1e-7)
    assert scan.ratios[0] == (2, pytest.approx(Fraction(tau_prime_power(2, 4, -24), 4 * 2**22)))
    assert all(abs(r) < 1 for _, r in scan.ratios[:474])


def test_tau_renorm_variants():
    assert tau_renorm(2, 1, "tau_sq", -24) == 1216
    assert tau_renorm(2, 0, "tau_sq_normalized", -24) == 1
    d = tau_renorm(3, 2, "dirichlet", 252, s=12)
    assert d == tau_prime_power(3, 2, 252) - Fraction(252, 3)
    with pytest.raises(ValueError):
        tau_renorm(2, 1, "dirichlet", -24, s=6)
    with pytest.raises(ValueError):
        tau_renorm(2, 1, "unknown", -24)
    with pytest.raises(ValueError):
        tau_renorm(2, -1, "tau_sq", -24)
