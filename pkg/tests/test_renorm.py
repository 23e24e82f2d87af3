from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from renorm_sums import functions as F
from renorm_sums.renorm import (
    DivergenceError, MissingGrowthError, PoleError, berlekamp_massey, dirichlet_ratio,
    dirichlet_ratio_power, exact_series_sum, g2_euler_product, rational_rep, renorm,
    renorm_multi, renorm_power, renorm_power_series, renorm_product, renorm_product_series,
    renorm_rational, renorm_series, series_from_char,
)
from renorm_sums.special import DomainError, zeta
from renorm_sums.values import rel_diff

PRIMES = st.sampled_from([2, 3, 5, 7, 11, 13])
WITH_GROWTH = sorted(n for n, f in F.CATALOGUE.items() if f.a1 is not None and n != "2^Omega")


def test_spot_values():
    assert renorm(F.get("sigma0"), 2, 1).value == Fraction(3, 2)
    assert renorm(F.get("beta"), 3, 3).value == 3
    assert renorm_rational(F.get("phi"), 11, 1).value == Fraction(121, 12)
    assert renorm_series(F.get("phi"), 11, 1).value == Fraction(121, 12)


def test_rational_pieces_for_totient():
    rep = rational_rep(F.get("phi"), 11, 1)
    assert (rep.U, rep.V, rep.exact) == (11, Fraction(1, 11), True)


@given(st.sampled_from(sorted(F.CATALOGUE)), PRIMES)
def test_unscaled_is_one(name, p):
    f = F.get(name)
    if f.a1 is None:
        return
    for route in ("series", "rational"):
        assert renorm(f, p, 0, route).value == 1


def test_divisor_count_formula():
    for p in (2, 3, 5, 7):
        for m in range(6):
            assert renorm(F.get("sigma0"), p, m).value == m + 1 - Fraction(m, p)


def test_completely_multiplicative_degenerate_case():
    two = F.get("2^Omega")
    for m in range(1, 6):
        assert renorm_series(two, 2, m).value == 2**m
    with pytest.raises(DivergenceError):
        renorm_rational(two, 2, 3)
    assert renorm(two, 2, 3).route == "series"


@given(st.sampled_from(WITH_GROWTH), PRIMES, st.integers(1, 4))
def test_series_and_rational_routes_agree(name, p, m):
    f = F.get(name)
    values = []
    for route in (renorm_rational, renorm_series):
        try:
            values.append(route(f, p, m).value)
        except DivergenceError:
            pass
    # one route may diverge legitimately (e.g. sigma0^3 at p=2), never both
    assert values
    if len(values) == 2:
        tol = 0 if all(isinstance(v, Fraction) for v in values) else 1e-12
        assert rel_diff(*values) <= tol


def test_single_route_cases_are_certified():
    with pytest.raises(DivergenceError, match="radius"):
        renorm_series(F.get("sigma0^3"), 2, 1)
    assert renorm_rational(F.get("sigma0^3"), 2, 1).value == Fraction(51, 26)
    with pytest.raises(DivergenceError, match="radius"):
        renorm_rational(F.get("lambda"), 2, 1)
    assert renorm_series(F.get("lambda"), 2, 1).value == -1


def test_sparse_characteristic_series_is_not_truncated_early():
    # partition-valued: the sequence L_r has growing gaps of zeros
    alpha = F.get("alpha")
    ser = renorm_series(alpha, 2, 1)
    rat = renorm_rational(alpha, 2, 1)
    assert rel_diff(ser.value, rat.value) < 1e-14
    assert ser.r_max > 40


def test_eventually_zero_sequences_stop_exactly():
    res = renorm_series(F.get("2^Omega"), 2, 4)
    assert res.value == 16 and res.truncation_estimate == 0
    head = [mpmath.mpf(2), mpmath.mpf(1)]
    val, _, est = series_from_char(lambda r: head[r] if r < 2 else mpmath.mpf(0),
                                   mpmath.mpf("0.5"), 200, 1e-15)
    assert val == mpmath.mpf("2.5") and est == 0


def test_rational_generating_function_makes_series_exact(small_tau):
    assert renorm_series(F.get("sigma1/phi"), 2, 1).value == Fraction(20, 13)
    assert renorm_series(F.get("tau^2", small_tau), 2, 1).value == 1216


def test_growth_watchdog():
    with pytest.raises(DivergenceError):
        series_from_char(lambda r: Fraction(3) ** r, Fraction(1), 200, 1e-15)
    with pytest.raises(DivergenceError):
        series_from_char(lambda r: Fraction(1), Fraction(1), 50, 1e-15)


def test_missing_growth_exponent():
    with pytest.raises((MissingGrowthError, ValueError)):
        renorm_series(F.get("mu"), 2, 1)


def test_berlekamp_massey_finds_fibonacci():
    fib = [0, 1]
    while len(fib) < 20:
        fib.append(fib[-1] + fib[-2])
    assert berlekamp_massey(fib) == [1, -1, -1]
    gf = exact_series_sum([Fraction(v) for v in fib[:20]], Fraction(1, 3))
    assert gf == Fraction(1, 3) / (1 - Fraction(1, 3) - Fraction(1, 9))


def test_pole_guard():
    f = F.MultFn("pole", lambda p, r: Fraction(-p) if r == 1 else Fraction(0), a1=1)
    with pytest.raises(PoleError):
        renorm_rational(f, 3, 1)


def test_multi_scale_product():
    phi = F.get("phi")
    assert renorm_multi(phi, [(3, 1), (5, 1)]).value == Fraction(75, 8)
    assert renorm_multi(phi, [(7, 2)]).value == renorm(phi, 7, 2).value
    assert renorm_multi(phi, []).value == 1


def test_product_form():
    s1, inv_phi = F.get("sigma1"), F.get("1/phi")
    assert renorm_product([s1, inv_phi], [1, 1], 2, 1).value == Fraction(20, 13)
    for m in (1, 2, 3):
        p = Fraction(2)
        expected = p**3 * (1 + p - p**-m) / (p**4 - p**3 + p**2 + p - 1)
        assert renorm_product([s1, inv_phi], [m, m], 2, 1).value == expected
    phi, psi = F.get("phi"), F.get("psi")
    a = renorm_product([phi, psi], [1, 1], 3, 3).value
    b = renorm_product_series([phi, psi], [1, 1], 3, 3).value
    assert a == b
    assert renorm_product([phi], [2], 5, 2).value == renorm_rational(phi, 5, 2).value


def test_power_form():
    s0 = F.get("sigma0")
    assert renorm_power(s0, 1, 3, 2, 1).value == renorm_rational(s0, 3, 2).value
    assert renorm_power(s0, 2, 3, 0, 1).value == 1
    assert renorm_power(s0, 2, 3, 2, 1).value == renorm_power_series(s0, 2, 3, 2, 1).value


def test_dirichlet_ratios():
    assert dirichlet_ratio(F.get("mu"), 2, 1, 2) == Fraction(-4, 3)
    for m in range(1, 5):
        assert dirichlet_ratio(F.get("lambda"), 3, m, 2) == (-1) ** m
    assert dirichlet_ratio(F.get("sigma0"), 2, 1, 2) == Fraction(7, 4)
    for route in ("closed", "rational"):
        assert dirichlet_ratio(F.get("sigma0"), 5, 3, 3, route=route) == (
            4 * (1 - Fraction(1, 125)) + Fraction(1, 125))
    assert dirichlet_ratio(F.get("phi"), 2, 0, 3) == 1
    with pytest.raises(DomainError):
        dirichlet_ratio(F.get("phi"), 2, 1, 1)


def test_power_form_dirichlet_ratio():
    p, m, s = 2, 1, 2
    assert dirichlet_ratio_power(F.get("sigma0"), 2, p, m, s) == Fraction(8, 5)
    for p, m, s in ((3, 2, 2), (5, 1, 3)):
        expected = Fraction((m + 1) * (p**s - 1) + 2, p**s + 1)
        assert rel_diff(dirichlet_ratio_power(F.get("sigma0"), 2, p, m, s), expected) <= 1e-15
    assert dirichlet_ratio_power(F.get("sigma0"), 2, 2, 0, 2) == 1


def test_euler_products_of_double_sums():
    mu2 = F.get("mu2/k^2")
    ep = g2_euler_product(mu2, 4, 2)
    assert float(ep.value) == pytest.approx(6 / 5)
    mu = F.get("mu/k^2")
    ep = g2_euler_product(mu, 3, 10**5)
    assert float(ep.value / zeta(2)) == pytest.approx(0.32263, abs=5e-5)
    lam = F.get("lambda/k^2")
    ep = g2_euler_product(lam, 30, 2000)
    assert float(ep.value) == pytest.approx(float(zeta(4) / zeta(2)), rel=1e-3)
