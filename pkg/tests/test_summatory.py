import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from renorm_sums import functions as F
from renorm_sums.functions import eval_mult
from renorm_sums.charfuncs import char_seq_power
from renorm_sums.summatory import (
    EXACT_RATIONAL_LIMIT, SummatorySpec, dirichlet_checkpoints, dirichlet_partial, evaluate,
    resolve_mode, scaled_checkpoints, sum_double, sum_multi_scaled, sum_power, sum_product,
    sum_scaled, sum_unscaled,
)


def brute(f, N, mult=1):
    return sum(eval_mult(f, mult * k) for k in range(1, N + 1))


def test_divisor_count_scaled_example(small_sieve):
    # sigma0(2k) for k = 1..10 is 2,3,4,4,4,6,4,5,6,6
    assert [eval_mult(F.get("sigma0"), 2 * k) for k in range(1, 11)] == [2, 3, 4, 4, 4, 6, 4, 5, 6, 6]
    assert sum_scaled(F.get("sigma0"), 10, 2, 1, small_sieve) == 44


def test_unscaled_special_case(small_sieve):
    f = F.get("sigma1")
    assert sum_scaled(f, 500, 7, 0, small_sieve) == sum_unscaled(f, 500, small_sieve) == brute(f, 500)


def test_liouville_scaled_consistency(small_sieve):
    lam = F.get("lambda")
    assert sum_scaled(lam, 100, 3, 2, small_sieve) == brute(lam, 100)
    assert sum_scaled(lam, 100, 3, 1, small_sieve) == -brute(lam, 100)


@given(st.sampled_from(sorted(n for n, f in F.CATALOGUE.items() if f.exact)),
       st.sampled_from([2, 3, 5, 7]), st.integers(0, 3), st.integers(1, 300))
def test_scaled_sum_matches_direct_evaluation(small_sieve, name, p, m, N):
    f = F.get(name)
    assert sum_scaled(f, N, p, m, small_sieve, "exact") == brute(f, N, p**m)


def test_multi_scaled(small_sieve):
    mu2 = F.get("mu2")
    assert sum_multi_scaled(mu2, 30, [], small_sieve) == brute(mu2, 30)
    assert sum_multi_scaled(mu2, 30, [(2, 1), (3, 1)], small_sieve) == brute(mu2, 30, 6)
    with pytest.raises(ValueError):
        sum_multi_scaled(mu2, 30, [(2, 1), (2, 2)], small_sieve)


def test_multi_scaled_ratio_approaches_product(small_sieve):
    phi = F.get("phi")
    N = 10**5
    ratio = Fraction(sum_multi_scaled(phi, N, [(3, 1), (5, 1)], small_sieve)) / sum_unscaled(phi, N, small_sieve)
    assert abs(ratio - Fraction(75, 8)) / Fraction(75, 8) < 1e-3


def test_product_sums(small_sieve):
    phi, psi = F.get("phi"), F.get("psi")
    direct = sum(eval_mult(phi, 2 * k) * eval_mult(psi, k) for k in range(1, 101))
    assert sum_product([phi, psi], [1, 0], 100, 2, small_sieve) == direct
    plain = sum(eval_mult(phi, k) * eval_mult(psi, k) for k in range(1, 101))
    assert sum_product([phi, psi], [0, 0], 100, 2, small_sieve) == plain
    assert sum_product([phi], [2], 100, 3, small_sieve) == sum_scaled(phi, 100, 3, 2, small_sieve)


def test_power_sums(small_sieve):
    s0 = F.get("sigma0")
    assert sum_power(s0, 2, 5, 2, 0, small_sieve) == 15
    assert sum_power(s0, 1, 80, 3, 2, small_sieve) == sum_scaled(s0, 80, 3, 2, small_sieve)


def test_power_functional_equation(small_sieve):
    f, n, p, m, N = F.get("sigma0"), 2, 2, 1, 200
    L = char_seq_power(f, n, p, m, 10).values
    rhs = sum(L[r] * sum_power(f, n, N // p**r, p, 0, small_sieve)
              for r in range(8) if N // p**r >= 1)
    assert sum_power(f, n, N, p, m, small_sieve) == rhs


def test_checkpoints_match_single_sums(small_sieve):
    f = F.get("sigma-1")
    grid = [10, 100, 1000, 5000]
    scaled, plain = scaled_checkpoints(f, grid, 3, 1, small_sieve, "exact")
    assert scaled == [sum_scaled(f, N, 3, 1, small_sieve, "exact") for N in grid]
    assert plain == [sum_unscaled(f, N, small_sieve, "exact") for N in grid]


def test_float_mode_close_to_exact(small_sieve):
    f = F.get("sigma-1")
    exact = sum_unscaled(f, 5000, small_sieve, "exact")
    approx = sum_unscaled(f, 5000, small_sieve, "float")
    assert math.isclose(float(approx), float(exact), rel_tol=1e-14)


def test_mode_resolution():
    assert resolve_mode(["integer"], 10**6) == "int"
    assert resolve_mode(["rational"], EXACT_RATIONAL_LIMIT) == "mpq"
    assert resolve_mode(["rational"], EXACT_RATIONAL_LIMIT + 1) == "float"
    assert resolve_mode(["real"], 10) == "float"
    with pytest.raises(ValueError):
        resolve_mode(["real"], 10, "exact")


def test_dirichlet_partials(small_sieve):
    mu = F.get("mu")
    one = dirichlet_partial(F.get("sigma1"), 2, 1, 3, 2, small_sieve)
    assert float(one.value) == pytest.approx(13)
    s, u = dirichlet_checkpoints(mu, 2, [1000, 100_000], 2, 1, small_sieve)
    assert s[-1] / u[-1] == pytest.approx(-4 / 3, rel=1e-3)
    lam = F.get("lambda")
    s, u = dirichlet_checkpoints(lam, 2, [100_000], 3, 3, small_sieve)
    assert s[-1] / u[-1] == pytest.approx(-1, rel=1e-12)
    assert dirichlet_partial(mu, 1, 10, 2, 1, small_sieve).warning


def test_double_sum_and_spec(small_sieve):
    s0 = F.get("sigma0")
    N = 30
    direct = sum(eval_mult(s0, a * b) for a in range(1, N + 1) for b in range(1, N + 1))
    assert sum_double(s0, N, small_sieve) == direct
    spec = SummatorySpec("simple", 10, s0, (2, 1))
    assert evaluate(spec, small_sieve) == 44
    power_spec = SummatorySpec("power", 5, s0, (2, 0), n=2)
    assert evaluate(power_spec, small_sieve) == 15
