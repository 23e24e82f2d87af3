from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from renorm_sums import functions as F
from renorm_sums.charfuncs import (
    char_closed_Af, char_from_values, char_seq, char_seq_power, char_seq_product,
    char_shift_dirichlet, char_tau, char_tau_sq,
)
from renorm_sums.summatory import cumulative, bulk_values, scaled_values
from renorm_sums.tau import tau_prime_power

PRIMES = st.sampled_from([2, 3, 5, 7, 11, 13])
EXACT_NAMES = sorted(n for n, f in F.CATALOGUE.items() if f.exact)


def test_totient_sequence_is_constant():
    for p in (2, 3, 7):
        for m in (1, 2, 3):
            L = char_seq(F.get("phi"), p, m, 12).values
            assert all(v == p ** (m - 1) * (p - 1) for v in L)


def test_psi_and_reciprocal_totient():
    p, m = 5, 2
    psi = char_seq(F.get("psi"), p, m, 10).values
    assert list(psi) == [(-1) ** r * p ** (m - 1) * (p + 1) for r in range(11)]
    inv = char_seq(F.get("1/phi"), p, m, 10).values
    assert list(inv) == [(-1) ** r * Fraction(p) ** (1 - r - m) / Fraction(p - 1) ** (r + 1)
                         for r in range(11)]


def test_inverse_divisor_count_first_terms():
    L = char_seq(F.get("1/sigma0"), 2, 1, 3).values
    assert L[:2] == (Fraction(1, 2), Fraction(1, 12))
    L2 = char_seq(F.get("1/sigma0"), 7, 2, 3).values
    assert L2 == (Fraction(1, 3), Fraction(1, 12), Fraction(17, 360), Fraction(23, 720))


def test_unscaled_sequence_is_trivial():
    assert char_seq(F.get("sigma1"), 3, 0, 5).values == (1, 0, 0, 0, 0, 0)
    assert char_seq_product([F.get("phi")], [0], 3, 4).values == (1, 0, 0, 0, 0)
    assert char_seq_power(F.get("phi"), 2, 3, 0, 4).values == (1, 0, 0, 0, 0)


@given(st.fractions(min_value=1, max_value=20, max_denominator=7), PRIMES,
       st.integers(1, 4), st.integers(0, 8))
def test_closed_form_for_linear_prime_powers(A, p, m, r):
    f = F.MultFn("lin", lambda q, k, A=A: A * Fraction(q) ** (k - 1), a1=1)
    assert char_seq(f, p, m, r).values[r] == char_closed_Af(A, p, m, r)
    g = F.MultFn("inv", lambda q, k, A=A: 1 / (A * Fraction(q) ** (k - 1)), a1=0)
    assert char_seq(g, p, m, r).values[r] == char_closed_Af(A, p, m, r, inverse=True)


def test_identity_like_case_vanishes():
    L = [char_closed_Af(5, 5, 2, r) for r in range(1, 6)]
    assert L == [0] * 5


def test_product_form():
    p = 3
    L = char_seq_product([F.get("phi"), F.get("psi")], [1, 2], p, 8).values
    assert all(v == (p * p - 1) * p ** (1 + 2 - 2) for v in L)


def test_power_form_reduces_and_first_term():
    for name, p, m in (("sigma0", 3, 2), ("psi", 2, 1)):
        f = F.get(name)
        assert char_seq_power(f, 1, p, m, 10).values == char_seq(f, p, m, 10).values
    f, n, p, m = F.get("sigma1"), 3, 2, 2
    L = char_seq_power(f, n, p, m, 2).values
    assert L[1] == f.value(p, m + n) - f.value(p, m) * f.value(p, n)


def test_dirichlet_shift():
    phi = F.get("phi")
    seq = char_seq(phi, 2, 1, 8)
    assert char_shift_dirichlet(seq, 0).values == seq.values
    direct = char_seq(F.shifted(phi, 3), 2, 1, 8).values
    assert char_shift_dirichlet(seq, 3).values == direct


def test_shifted_tau(small_tau):
    tau = F.get("tau", small_tau)
    p, s = 3, 7
    shifted = char_shift_dirichlet(char_seq(tau, p, 1, 6), s).values
    assert shifted[0] == Fraction(small_tau[p], p**s)
    assert shifted[1] == -Fraction(p**11, p ** (2 * s))
    assert all(v == 0 for v in shifted[2:])


def test_tau_sequences(small_tau):
    tau_of = lambda p, j: tau_prime_power(p, j, small_tau[p])  # noqa: E731
    tau = F.get("tau", small_tau)
    tau_sq = F.get("tau^2", small_tau)
    assert char_tau(2, 1, 5, tau_of) == 0
    assert char_tau(2, 1, 1, tau_of) == -(2**11)
    for p in (2, 3):
        for m in (1, 2, 3):
            generic = char_seq(tau, p, m, 12).values
            assert list(generic) == [char_tau(p, m, r, tau_of) for r in range(13)]
        for m in (1, 2):
            generic = char_seq(tau_sq, p, m, 8).values
            assert list(generic) == [char_tau_sq(p, m, r, tau_of) for r in range(9)]


def test_char_from_values_rejects_short_input():
    with pytest.raises(ValueError):
        char_from_values([1, 2, 3], [1, 2])


@given(st.sampled_from(EXACT_NAMES), PRIMES, st.integers(0, 3), st.integers(1, 400))
def test_functional_equation_is_exact(small_sieve, name, p, m, N):
    f = F.get(name)
    L = char_seq(f, p, m, 12).values
    base = cumulative(bulk_values(f.value, N, small_sieve, "mpq"), range(N + 1), "mpq")
    lhs = cumulative(scaled_values(f, N, p, m, small_sieve, "mpq"), [N], "mpq")[0]
    rhs, r = Fraction(0), 0
    while N // p**r >= 1:
        rhs += L[r] * base[N // p**r]
        r += 1
    assert lhs == rhs
