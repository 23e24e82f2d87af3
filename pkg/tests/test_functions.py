import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from renorm_sums import functions as F
from renorm_sums.functions import CatalogueError, MultFn, eval_mult
from renorm_sums.sieve import factorize
from renorm_sums.values import rel_diff


def brute_phi(n):
    return sum(1 for j in range(1, n + 1) if math.gcd(j, n) == 1)


def brute_sigma(n, a):
    return sum(Fraction(d) ** a for d in range(1, n + 1) if n % d == 0)


def brute_mobius(n):
    fac = factorize(n, F_SIEVE)
    return 0 if any(r > 1 for _, r in fac) else (-1) ** len(fac)


from renorm_sums.sieve import sieve_spf  # noqa: E402

F_SIEVE = sieve_spf(5000)


def test_spot_evaluations():
    assert eval_mult(F.get("phi"), 12) == 4
    assert eval_mult(F.get("sigma0"), 1) == 1
    assert eval_mult(F.get("mu"), 18) == 0
    assert F.get("phi").value(3, 2) == 6
    assert F.get("sigma0").value(2, 3) == 4
    assert F.get("d3").value(2, 2) == 6


@given(st.integers(min_value=1, max_value=3000))
def test_classical_functions_against_brute_force(n):
    assert eval_mult(F.get("phi"), n, F_SIEVE) == brute_phi(n)
    for a, name in ((0, "sigma0"), (1, "sigma1"), (-1, "sigma-1")):
        assert eval_mult(F.get(name), n, F_SIEVE) == brute_sigma(n, a)
    assert eval_mult(F.get("mu"), n, F_SIEVE) == brute_mobius(n)
    assert eval_mult(F.get("mu2"), n, F_SIEVE) == brute_mobius(n) ** 2


def test_piltz_counts_ordered_factorizations():
    for n in range(1, 200):
        count = sum(1 for a in range(1, n + 1) if n % a == 0
                    for b in range(1, n // a + 1) if (n // a) % b == 0)
        assert eval_mult(F.get("d3"), n, F_SIEVE) == count


def test_partition_and_beta_rules():
    alpha, beta = F.get("alpha"), F.get("beta")
    assert [alpha.value(2, r) for r in range(6)] == [1, 1, 2, 3, 5, 7]
    assert eval_mult(beta, 2**3 * 3**2) == 6
    assert eval_mult(beta, 30) == 1


@given(st.sampled_from(sorted(F.CATALOGUE)), st.integers(1, 70), st.integers(1, 70))
def test_multiplicative_on_coprime_pairs(name, a, b):
    assume(math.gcd(a, b) == 1)
    f = F.get(name)
    whole = eval_mult(f, a * b, F_SIEVE)
    split = eval_mult(f, a, F_SIEVE) * eval_mult(f, b, F_SIEVE)
    if f.exact:
        assert whole == split
    else:
        assert rel_diff(whole, split) < 1e-25


@given(st.integers(1, 60), st.integers(1, 60))
def test_complete_multiplicativity(a, b):
    for name in ("lambda", "2^Omega"):
        f = F.get(name)
        assert f.completely_multiplicative
        assert eval_mult(f, a * b) == eval_mult(f, a) * eval_mult(f, b)


def test_value_at_one_and_validation():
    f = F.get("psi")
    assert f.value(7, 0) == 1
    with pytest.raises(ValueError):
        f.value(7, -1)
    with pytest.raises(ValueError):
        eval_mult(f, 0)


def test_admissibility_is_enforced():
    with pytest.raises(ValueError):
        MultFn("bad", lambda p, r: Fraction(1), a1=-1)
    with pytest.raises(ValueError):
        MultFn("bad", lambda p, r: Fraction(1), a1=0, b1=-1)
    with pytest.raises(ValueError):
        MultFn("bad", lambda p, r: Fraction(1), a1=1, a2=0, b2=0)


def test_catalogue_census_and_lookup():
    assert len(F.names()) >= 25
    with pytest.raises(CatalogueError):
        F.get("no-such-function")
    psi = F.get("psi")
    assert (psi.a1, psi.growth.gamma1, psi.growth.K1_text, psi.growth.r_star) == (2, 1, "(p+1)/p", 1)


def test_combinators():
    s1 = F.sigma(1)
    sq = F.powered(s1, 2, "s1sq", a1=3)
    assert sq.value(2, 2) == 49
    inv = F.reciprocal(s1, "inv", a1=0, b1=1)
    assert inv.value(3, 1) == Fraction(1, 4)
    prod = F.product([s1, inv], "one", a1=1)
    assert prod.value(5, 3) == 1
    sh = F.shifted(s1, 2)
    assert sh.value(2, 1) == Fraction(3, 4)


def test_tau_descriptor_reads_table(small_tau):
    tau = F.get("tau", small_tau)
    assert [tau.value(2, 1), tau.value(3, 1), tau.value(2, 2)] == [-24, 252, -1472]
    assert eval_mult(tau, 6) == -6048


def test_ramanujan_sum_values():
    # c_q(n) for q = p^r: sum over d | gcd(q, n) of mu(q/d) d
    def c(q, n):
        return sum(brute_mobius(q // d) * d for d in range(1, q + 1) if q % d == 0 and n % d == 0)
    f = F.ramanujan_sum(12, 0)
    for q in range(1, 60):
        assert eval_mult(f, q, F_SIEVE) == c(q, 12)
