"""Multiplicative functions defined by their prime-power rules.

A :class:`MultFn` carries the rule ``(p, r) -> f(p**r)`` together with the
growth class of its summatory function,
``F{f;N,1} ~ F * N**a1 (log N)**b1 * (1 + O(N**-a2 (log N)**-b2))``,
and, where known, the bound ``|f(p**r)| <= K1(p) p**(gamma1 r)`` for
``r >= r_star``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Callable, Optional

import mpmath

from .sieve import SmallestPrimeFactorTable, factorize
from .special import partition, zeta, zeta_product
from .values import Value, is_exact, power, to_real


class CatalogueError(KeyError):
    pass


@dataclass(frozen=True)
class GrowthBound:
    """Prime-power bound ``|f(p^r)| <= K1(p) * p**(gamma1*r)``, ``r >= r_star``."""

    K1: Callable[[int], Value]
    gamma1: Fraction
    r_star: int
    K1_text: str


@dataclass(frozen=True, eq=False)
class MultFn:
    name: str
    rule: Callable[[int, int], Value]
    a1: Optional[Fraction]
    b1: Fraction = Fraction(0)
    a2: Optional[Fraction] = None
    b2: Optional[Fraction] = None
    F_const: Optional[Callable[[], Value]] = None
    F_text: str = ""
    completely_multiplicative: bool = False
    kind: str = "rational"  # "integer" | "rational" | "real"
    growth: Optional[GrowthBound] = None
    normalization: int = 1
    source: str = ""
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("integer", "rational", "real"):
            raise ValueError(f"unknown value kind {self.kind!r}")
        if self.a1 is not None:
            a1, b1 = Fraction(self.a1), Fraction(self.b1)
            object.__setattr__(self, "a1", a1)
            object.__setattr__(self, "b1", b1)
            if a1 < 0 or (a1 == 0 and b1 < 0):
                raise ValueError(f"{self.name}: inadmissible growth (a1={a1}, b1={b1})")
        if self.a2 is not None:
            a2 = Fraction(self.a2)
            b2 = Fraction(self.b2 if self.b2 is not None else 0)
            object.__setattr__(self, "a2", a2)
            object.__setattr__(self, "b2", b2)
            if a2 < 0 or (a2 == 0 and b2 <= 0):
                raise ValueError(f"{self.name}: inadmissible error term (a2={a2}, b2={b2})")
        object.__setattr__(self, "_cached", lru_cache(maxsize=None)(self.rule))

    def __repr__(self):
        return f"MultFn({self.name!r})"

    @property
    def exact(self) -> bool:
        return self.kind != "real"

    def value(self, p: int, r: int) -> Value:
        """``f(p**r)``; ``f(1) = 1`` for every catalogued function."""
        if r < 0:
            raise ValueError("exponent must be nonnegative")
        if r == 0:
            return Fraction(1)
        return self._cached(p, r)

    @property
    def F_value(self) -> Optional[Value]:
        return None if self.F_const is None else self.F_const()

    def x_scale(self, p: int) -> Value:
        """``p**-a1``, the per-step weight of both renormalization series."""
        if self.a1 is None:
            raise ValueError(f"{self.name} has no registered growth exponent a1")
        return power(p, -self.a1)


def eval_mult(f: MultFn, k: int, table: Optional[SmallestPrimeFactorTable] = None) -> Value:
    """``f(k)`` as the product of ``f(p**r)`` over the factorization of ``k``."""
    if k < 1:
        raise ValueError("argument must be a positive integer")
    out = Fraction(1)
    if table is None:
        fac = _trial_factor(k)
    else:
        fac = factorize(k, table)
    for p, r in fac:
        out = out * f.value(p, r)
        if out == 0:
            break
    return out


def _trial_factor(k: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= k:
        if k % d == 0:
            r = 0
            while k % d == 0:
                k //= d
                r += 1
            out.append((d, r))
        d += 1 if d == 2 else 2
    if k > 1:
        out.append((k, 1))
    return out


# --- rules --------------------------------------------------------------------

def _phi(p, r):
    return Fraction(p ** (r - 1) * (p - 1))


def _psi(p, r):
    return Fraction(p ** (r - 1) * (p + 1))


def _sigma_rule(a):
    a = Fraction(a)
    if a == 0:
        return lambda p, r: Fraction(r + 1)
    if a.denominator == 1:
        ai = int(a)

        def rule(p, r):
            pa = Fraction(p) ** ai
            return (pa ** (r + 1) - 1) / (pa - 1)

        return rule

    def real_rule(p, r):
        pa = mpmath.power(p, to_real(a))
        return (pa ** (r + 1) - 1) / (pa - 1)

    return real_rule


def _r2_core(p, r):
    if p == 2:
        return Fraction(1)
    if p % 4 == 1:
        return Fraction(r + 1)
    return Fraction(1 - r % 2)


def _ramanujan_sum_rule(n):
    def rule(p, r):
        q = p**r
        if n % q == 0:
            return Fraction(q - q // p)
        if n % (q // p) == 0:
            return Fraction(-(q // p))
        return Fraction(0)

    return rule


def _table3(K1, gamma1, r_star, text):
    return GrowthBound(K1, Fraction(gamma1), r_star, text)


# --- combinators ----------------------------------------------------------------

def _kind_of(*kinds):
    if "real" in kinds:
        return "real"
    if "rational" in kinds:
        return "rational"
    return "integer"


def shifted(f: MultFn, s, name=None, a1=0, b1=0, **meta) -> MultFn:
    """The function ``f(k) * k**-s`` (a Dirichlet-series summand)."""
    s = Fraction(s) if is_exact(s) else s
    integral = is_exact(s) and Fraction(s).denominator == 1
    kind = "rational" if integral and f.exact else "real"

    def rule(p, r):
        return f.value(p, r) * power(p, -s * r)

    return MultFn(
        name=name or f"{f.name}/k^{s}",
        rule=rule,
        a1=a1,
        b1=b1,
        kind=kind,
        completely_multiplicative=f.completely_multiplicative,
        params={"base": f.name, "s": s, **meta.pop("params", {})},
        **meta,
    )


def product(fs, name, a1, b1=0, **meta) -> MultFn:
    """Pointwise product ``prod_i f_i(k)`` (same argument for every factor)."""
    fs = tuple(fs)

    def rule(p, r):
        out = Fraction(1)
        for g in fs:
            out = out * g.value(p, r)
        return out

    return MultFn(name=name, rule=rule, a1=a1, b1=b1, kind=_kind_of(*(g.kind for g in fs)), **meta)


def reciprocal(f: MultFn, name, a1, b1=0, **meta) -> MultFn:
    def rule(p, r):
        return 1 / f.value(p, r)

    kind = "real" if f.kind == "real" else "rational"
    return MultFn(name=name, rule=rule, a1=a1, b1=b1, kind=kind,
                  completely_multiplicative=f.completely_multiplicative, **meta)


def powered(f: MultFn, n: int, name, a1, b1=0, **meta) -> MultFn:
    """``f(k)**n`` for integer ``n``."""
    def rule(p, r):
        return f.value(p, r) ** n

    kind = f.kind if n >= 0 else ("real" if f.kind == "real" else "rational")
    return MultFn(name=name, rule=rule, a1=a1, b1=b1, kind=kind,
                  completely_multiplicative=f.completely_multiplicative, **meta)


# --- factories --------------------------------------------------------------------

def sigma(a) -> MultFn:
    """Divisor function ``sigma_a``; Real-valued when ``a`` is not an integer."""
    a = Fraction(a)
    integral = a.denominator == 1
    kind = "integer" if integral and a >= 0 else ("rational" if integral else "real")
    if a == 0:
        return MultFn("sigma0", _sigma_rule(0), a1=1, b1=1, a2=0, b2=1,
                      F_const=lambda: Fraction(1), F_text="D_1 = 1", kind="integer",
                      source="summatory asymptotics", params={"a": a})
    if a == 1:
        return MultFn("sigma1", _sigma_rule(1), a1=2, a2=1, b2=Fraction(-2, 3),
                      F_const=lambda: zeta(2) / 2, F_text="zeta(2)/2", kind="integer",
                      source="summatory asymptotics", params={"a": a})
    if a == -1:
        return MultFn("sigma-1", _sigma_rule(-1), a1=1, a2=1, b2=-1,
                      F_const=lambda: zeta(2), F_text="zeta(2)", kind="rational",
                      source="summatory asymptotics", params={"a": a})
    if a > 0:
        return MultFn(f"sigma{_fmt_param(a)}", _sigma_rule(a), a1=a + 1, a2=min(1, a), b2=0,
                      F_const=lambda: zeta(to_real(a) + 1) / (to_real(a) + 1),
                      F_text="zeta(a+1)/(a+1)", kind=kind, source="summatory asymptotics", params={"a": a})
    b = -a
    return MultFn(f"sigma{_fmt_param(a)}", _sigma_rule(a), a1=1, a2=min(1, b), b2=0,
                  F_const=lambda: zeta(to_real(b) + 1), F_text="zeta(b+1)", kind=kind,
                  source="summatory asymptotics", params={"a": a})


def _fmt_param(a) -> str:
    a = Fraction(a)
    return str(a.numerator) if a.denominator == 1 else f"({a.numerator}/{a.denominator})"


def jordan(n: int) -> MultFn:
    def rule(p, r):
        return Fraction(p ** (n * (r - 1)) * (p**n - 1))

    return MultFn(
        f"J{n}", rule, a1=n + 1, F_const=lambda: 1 / (zeta(n + 1) * (n + 1)),
        F_text="1/((n+1) zeta(n+1))", kind="integer", source="Jordan asymptotics",
        growth=_table3(lambda p: Fraction(p**n - 1, p**n), n, 1, "(p^n-1)/p^n"),
        params={"n": n},
    )


def piltz(n: int) -> MultFn:
    def rule(p, r):
        return Fraction(comb(n + r - 1, r))

    return MultFn(f"d{n}", rule, a1=1, b1=n - 1, a2=0, b2=1,
                  F_const=lambda: 1 / mpmath.gamma(n), F_text="1/Gamma(n)", kind="integer",
                  source="summatory asymptotics", params={"n": n})


def ku_phiv(u: int, v: int, name=None) -> MultFn:
    """``k**u * phi(k)**v``; its class follows the sign of ``u + v + 1``."""
    def rule(p, r):
        return Fraction(p) ** (u * r) * Fraction(p ** (r - 1) * (p - 1)) ** v

    a1, b1 = _kuv_class(u, v)
    kind = "integer" if u >= 0 and v >= 0 else "rational"
    return MultFn(name or f"k^{u}*phi^{v}", rule, a1=a1, b1=b1, kind=kind,
                  source="k^u phi^v classes", params={"u": u, "v": v})


def ku_psiv(u: int, v: int, name=None) -> MultFn:
    def rule(p, r):
        return Fraction(p) ** (u * r) * Fraction(p ** (r - 1) * (p + 1)) ** v

    a1, b1 = _kuv_class(u, v)
    kind = "integer" if u >= 0 and v >= 0 else "rational"
    return MultFn(name or f"k^{u}*psi^{v}", rule, a1=a1, b1=b1, kind=kind,
                  source="k^u psi^v classes", params={"u": u, "v": v})


def ku_jv(u: int, v: int, name=None) -> MultFn:
    def rule(p, r):
        return Fraction(p) ** (u * r) * Fraction(p ** (v * (r - 1)) * (p**v - 1))

    a1, b1 = _kuv_class(u, v)
    kind = "integer" if u >= 0 else "rational"
    return MultFn(name or f"k^{u}*J{v}", rule, a1=a1, b1=b1, kind=kind,
                  source="k^u J_v classes", params={"u": u, "v": v})


def _kuv_class(u, v):
    w = u + v
    if w > -1:
        return Fraction(w + 1), Fraction(0)
    if w == -1:
        return Fraction(0), Fraction(1)
    return Fraction(0), Fraction(0)


def phi_over_psi_power(v: int) -> MultFn:
    def rule(p, r):
        return Fraction(p - 1, p + 1) ** v

    name = "phi/psi" if v == 1 else f"(phi/psi)^{v}"
    F = (lambda: mpmath.mpf("0.4716")) if v == 1 else None
    return MultFn(name, rule, a1=1, F_const=F, F_text="prod_p (1-2/(p(p+1)))" if v == 1 else "",
                  kind="rational", source="(phi/psi)^v", params={"v": v})


def sigma0_power(n: int) -> MultFn:
    def rule(p, r):
        return Fraction((r + 1) ** n)

    F = {1: (lambda: Fraction(1)), 2: (lambda: 1 / mpmath.pi**2)}.get(n)
    return MultFn("sigma0" if n == 1 else f"sigma0^{n}", rule, a1=1, b1=2**n - 1, a2=0, b2=1,
                  F_const=F, F_text={1: "D_1 = 1", 2: "D_2 = pi^-2"}.get(n, "D_n"),
                  kind="integer", source="summatory asymptotics", params={"n": n})


def beta_power(n: int) -> MultFn:
    def rule(p, r):
        return Fraction(r**n)

    F = (lambda: zeta(2) * zeta(3) / zeta(6)) if n == 1 else None
    return MultFn("beta" if n == 1 else f"beta^{n}", rule, a1=1, a2=Fraction(1, 2), b2=0,
                  F_const=F, F_text="zeta(2)zeta(3)/zeta(6)" if n == 1 else "",
                  kind="integer", source="summatory asymptotics", params={"n": n})


def piltz_square(n: int) -> MultFn:
    def rule(p, r):
        return Fraction(comb(n + r - 1, r) ** 2)

    F = (lambda: 1 / mpmath.pi**2) if n == 2 else None
    return MultFn(f"d{n}^2", rule, a1=1, b1=n * n - 1, a2=0, b2=1, F_const=F,
                  F_text="E_n", kind="integer", source="summatory asymptotics", params={"n": n})


def piltz_reciprocal(n: int) -> MultFn:
    def rule(p, r):
        return Fraction(1, comb(n + r - 1, r))

    return MultFn(f"1/d{n}", rule, a1=1, b1=Fraction(1, n) - 1, a2=0, b2=1,
                  F_text="K_n", kind="rational", source="summatory asymptotics", params={"n": n})


def sigma_square(a) -> MultFn:
    s = sigma(a)
    a = Fraction(a)
    F = (lambda: 5 * zeta(3) / 6) if a == 1 else None
    return powered(s, 2, f"sigma{_fmt_param(a)}^2", a1=2 * a + 1, F_const=F,
                   F_text="5/6 zeta(3)" if a == 1 else "", source="summatory asymptotics",
                   params={"a": a})


def sigma0_sigma(a) -> MultFn:
    a = Fraction(a)
    return product([sigma(0), sigma(a)], f"sigma0*sigma{_fmt_param(a)}", a1=a + 1, b1=1,
                   source="sigma0 sigma_a", params={"a": a})


def sigma_shifted(a, s) -> MultFn:
    return shifted(sigma(a), s, name=f"sigma{_fmt_param(a)}/k^{_fmt_param(s)}",
                   source="Dirichlet series", params={"a": Fraction(a)})


def ramanujan_sum(n: int, s=2) -> MultFn:
    """``q -> C_q(n) q**-s`` for fixed ``n``; multiplicative in ``q``."""
    base = MultFn(f"C_q({n})", _ramanujan_sum_rule(n), a1=None, kind="integer",
                  params={"n": n})
    return shifted(base, s, name=f"C_q({n})/q^{_fmt_param(s)}",
                   F_const=lambda: mpmath.power(n, 1 - to_real(s))
                   * to_real(eval_mult(sigma(Fraction(s) - 1), n)) / zeta(s),
                   F_text="n^(1-s) sigma_{s-1}(n)/zeta(s)", source="Ramanujan sums",
                   params={"n": n})


def tau_function(table) -> MultFn:
    """Ramanujan tau; ``tau(p)`` is read from ``table`` (a TauTable)."""
    from .tau import tau_prime_power

    def rule(p, r):
        return Fraction(tau_prime_power(p, r, table[p]))

    return MultFn("tau", rule, a1=None, kind="integer", source="Ramanujan tau",
                  params={"tau_table": table})


def tau_square(table) -> MultFn:
    t = tau_function(table)
    return powered(t, 2, "tau^2", a1=12, F_const=lambda: mpmath.mpf("0.032007"),
                   F_text="~ 0.032007", source="summatory asymptotics", params={"tau_table": table})


def tau_shifted(table, s=7) -> MultFn:
    return shifted(tau_function(table), s, name=f"tau/k^{_fmt_param(s)}",
                   source="tau Dirichlet series", params={"tau_table": table})


def tau_square_normalized(table) -> MultFn:
    return shifted(tau_square(table), Fraction(25, 2), name="tau^2/k^(25/2)",
                   F_const=lambda: mpmath.mpf("1.58824"), F_text="C11 ~ 1.58824",
                   source="Dirichlet series", params={"tau_table": table})


# --- the catalogue ---------------------------------------------------------------

def _z2z3z6():
    return zeta(2) * zeta(3) / zeta(6)


def _build_catalogue() -> dict[str, MultFn]:
    phi = MultFn("phi", _phi, a1=2, a2=1, b2=-1, F_const=lambda: 1 / (2 * zeta(2)),
                 F_text="1/(2 zeta(2))", kind="integer", source="classical",
                 growth=_table3(lambda p: Fraction(p - 1, p), 1, 1, "(p-1)/p"))
    psi = MultFn("psi", _psi, a1=2, a2=1, b2=-1, F_const=lambda: zeta(2) / (2 * zeta(4)),
                 F_text="1/2 zeta(2)/zeta(4)", kind="integer", source="summatory asymptotics",
                 growth=_table3(lambda p: Fraction(p + 1, p), 1, 1, "(p+1)/p"))
    mu = MultFn("mu", lambda p, r: Fraction(-1 if r == 1 else 0), a1=None, kind="integer",
                source="Moebius")
    mu2 = MultFn("mu2", lambda p, r: Fraction(1 if r == 1 else 0), a1=1, a2=Fraction(1, 2),
                 b2=0, F_const=lambda: 1 / zeta(2), F_text="1/zeta(2)", kind="integer",
                 source="summatory asymptotics", growth=_table3(lambda p: Fraction(1), 0, 0, "1"))
    # Sum of lambda is o(N); registered with a1 = 0 so that the one-term
    # characteristic series applies.
    liouville = MultFn("lambda", lambda p, r: Fraction((-1) ** r), a1=0,
                       completely_multiplicative=True, kind="integer", source="Liouville")
    two_omega = MultFn("2^omega", lambda p, r: Fraction(2), a1=1, b1=1, a2=0, b2=1,
                       F_const=lambda: 1 / zeta(2), F_text="1/zeta(2)", kind="integer",
                       source="summatory asymptotics", growth=_table3(lambda p: Fraction(2), 0, 0, "2"))
    three_omega = MultFn("3^omega", lambda p, r: Fraction(3), a1=1, b1=2, a2=0, b2=1,
                         F_const=lambda: mpmath.mpf("0.14338"), F_text="~ 0.14338",
                         kind="integer", source="summatory asymptotics",
                         growth=_table3(lambda p: Fraction(3), 0, 0, "3"))
    two_Omega = MultFn("2^Omega", lambda p, r: Fraction(2**r), a1=1, b1=2, a2=0, b2=1,
                       F_const=lambda: mpmath.mpf("0.27317"), F_text="~ 0.27317",
                       completely_multiplicative=True, kind="integer", source="summatory asymptotics")
    beta = beta_power(1)
    alpha = MultFn("alpha", lambda p, r: Fraction(partition(r)), a1=1, a2=Fraction(1, 2), b2=0,
                   F_const=lambda: zeta_product(60), F_text="prod_l zeta(l) ~ 2.29486",
                   kind="integer", source="summatory asymptotics")
    r2 = MultFn("r2", _r2_core, a1=1, a2=Fraction(1, 2), b2=0, F_const=lambda: mpmath.pi / 4,
                F_text="pi/4 (r2/4 core; r2 itself: pi)", kind="integer", normalization=4,
                source="summatory asymptotics")
    sigma0 = sigma(0)

    cat = [
        phi, psi, jordan(2), jordan(3), mu, mu2, liouville,
        sigma0, sigma(1), sigma(2), sigma(-1), sigma(-2), sigma(Fraction(1, 2)),
        sigma0_power(2), sigma0_power(3),
        reciprocal(sigma0, "1/sigma0", a1=1, b1=Fraction(-1, 2), a2=0, b2=1,
                   F_const=lambda: mpmath.mpf("0.5469"), F_text="~ 0.5469", source="summatory asymptotics"),
        product([sigma(1), reciprocal(sigma0, "1/sigma0", a1=1)], "sigma1/sigma0", a1=2,
                b1=Fraction(-1, 2), a2=0, b2=1, F_const=lambda: mpmath.mpf("0.3569"),
                F_text="~ 0.3569", source="summatory asymptotics"),
        reciprocal(sigma(1), "1/sigma1", a1=0, b1=1, a2=0, b2=1,
                   F_const=lambda: mpmath.mpf("0.6728"), F_text="~ 0.6728", source="summatory asymptotics"),
        product([sigma(1), reciprocal(phi, "1/phi", a1=0, b1=1)], "sigma1/phi", a1=1, a2=1,
                b2=-2, F_const=lambda: mpmath.mpf("3.6174"), F_text="~ 3.6174",
                source="summatory asymptotics"),
        product([sigma(1), reciprocal(psi, "1/psi", a1=0, b1=1)], "sigma1/psi", a1=1,
                source="sigma1/psi"),
        sigma0_sigma(1), sigma_square(1), sigma_square(Fraction(1, 2)),
        piltz(3), piltz(4), piltz_square(3), piltz_reciprocal(3),
        beta, beta_power(2), alpha,
        reciprocal(alpha, "1/alpha", a1=1, a2=Fraction(1, 2), b2=Fraction(1, 2),
                   F_const=lambda: mpmath.mpf("0.75204"), F_text="~ 0.75204", source="summatory asymptotics"),
        two_omega, three_omega, two_Omega, r2,
        shifted(r2, 1, name="r2/k", a1=0, b1=1, F_const=lambda: mpmath.pi / 4,
                F_text="pi/4 (core)", source="Dirichlet series"),
        reciprocal(phi, "1/phi", a1=0, b1=1, a2=0, b2=1, F_const=_z2z3z6,
                   F_text="zeta(2)zeta(3)/zeta(6)", source="summatory asymptotics",
                   growth=_table3(lambda p: Fraction(p, p - 1), -1, 1, "p/(p-1)")),
        reciprocal(psi, "1/psi", a1=0, b1=1, a2=0, b2=1,
                   F_const=lambda: mpmath.mpf("0.37396"), F_text="~ 0.37396",
                   source="summatory asymptotics",
                   growth=_table3(lambda p: Fraction(p, p + 1), -1, 1, "p/(p+1)")),
        ku_phiv(1, -1, "k/phi"),
        ku_phiv(-2, 1, "phi/k^2"),
        ku_phiv(0, 2, "phi^2"),
        ku_phiv(-3, 1, "phi/k^3"),
        ku_psiv(-1, 1, "psi/k"),
        ku_psiv(0, 2, "psi^2"),
        ku_psiv(-4, 1, "psi/k^4"),
        ku_jv(-1, 2, "J2/k"),
        ku_jv(-5, 2, "J2/k^5"),
        phi_over_psi_power(1), phi_over_psi_power(2), phi_over_psi_power(-1),
        product([mu2, reciprocal(phi, "1/phi", a1=0, b1=1)], "mu2/phi", a1=0, b1=1, a2=0, b2=1,
                F_const=lambda: Fraction(1), F_text="1", source="summatory asymptotics"),
        shifted(mu2, 1, name="mu2/k", a1=0, b1=1, F_const=lambda: 1 / zeta(2),
                F_text="1/zeta(2)", source="Dirichlet series"),
        shifted(mu, 2, name="mu/k^2", F_const=lambda: 1 / zeta(2), F_text="1/zeta(s)",
                source="Dirichlet series"),
        shifted(mu2, 2, name="mu2/k^2", F_const=lambda: zeta(2) / zeta(4),
                F_text="zeta(s)/zeta(2s)", source="Dirichlet series"),
        shifted(liouville, 2, name="lambda/k^2", F_const=lambda: zeta(4) / zeta(2),
                F_text="zeta(2s)/zeta(s)", source="Dirichlet series"),
        shifted(sigma0, 2, name="sigma0/k^2", F_const=lambda: zeta(2) ** 2,
                F_text="zeta(s)^2", source="Dirichlet series"),
        sigma_shifted(1, 3),
        shifted(beta, 2, name="beta/k^2", source="beta Dirichlet series"),
        shifted(piltz(3), 2, name="d3/k^2", F_const=lambda: zeta(2) ** 3, F_text="zeta(s)^3",
                source="Piltz Dirichlet series"),
        ramanujan_sum(12, 2),
        ramanujan_sum(5, 3),
    ]
    out = {}
    for f in cat:
        if f.name in out:
            raise ValueError(f"duplicate catalogue name {f.name}")
        out[f.name] = f
    return out


CATALOGUE: dict[str, MultFn] = _build_catalogue()

TAU_NAMES = ("tau", "tau^2", "tau/k^7", "tau^2/k^(25/2)")


def get(name: str, tau_table=None) -> MultFn:
    """Look up a catalogue entry by name (tau entries need a TauTable)."""
    if name in CATALOGUE:
        return CATALOGUE[name]
    if name in TAU_NAMES:
        if tau_table is None:
            from .tau import default_tau_table
            tau_table = default_tau_table()
        return {
            "tau": tau_function,
            "tau^2": tau_square,
            "tau/k^7": tau_shifted,
            "tau^2/k^(25/2)": tau_square_normalized,
        }[name](tau_table)
    raise CatalogueError(f"unknown function {name!r}")


def prime_power_value(f, p: int, r: int) -> Value:
    if isinstance(f, str):
        f = get(f)
    return f.value(p, r)


def names() -> list[str]:
    return list(CATALOGUE) + list(TAU_NAMES)


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1
