"""Morita's Gamma_p and the generalized Gamma_q, q = p**t.

Every function takes the natural argument: ``gamma_q(x)`` is Gamma_q(x), so
Gamma_q(x + 1) = prod_{l < t} Gamma_p(h_l(x) + 1) is ``gamma_q(x + 1)``. The
exponent formulas (``ota_gamma``, ``gamma_q_closed``) are stated in terms of
n and return Gamma_q(n + 1).

p-adic evaluation uses continuity: Gamma_p(n) mod p**N depends only on
n mod p**N (for p = 2 once N >= 3), because a full window of p**N integers
prime to p multiplies to -1 (resp. +1) mod p**N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .factorial import FactorialVariant, factorial_p, factorial_p_mod, factorial_q
from .padic import (
    PadicInt,
    PrecisionError,
    PrimeContext,
    abs_p,
    digits,
    from_integer,
    from_rational,
    h_ell,
    residue_rep,
    residue_rep_prime,
    unit_inverse,
    unit_pow,
    valuation,
    vp_int,
)

__all__ = [
    "gamma_p_nat",
    "gamma_p",
    "gamma_p_closed",
    "gamma_p_block",
    "gamma_p_prime_power",
    "factorial_via_gamma",
    "gamma_q_nat",
    "gamma_q",
    "ExponentPair",
    "exponents",
    "ota_gamma",
    "CLOSED_CASES",
    "closed_form_exponents",
    "gamma_q_closed",
    "functional_step",
    "IdentityCheck",
    "complement",
    "gauss_legendre",
    "roots_product",
    "BinomialRatio",
    "binomial_ratio",
    "LipschitzReport",
    "lipschitz_probe",
]


def gamma_p_nat(n: int, p: int) -> int:
    """Gamma_p(n) = (-1)^n prod_{j < n, p not | j} j for n >= 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1
    return (-1) ** n * factorial_p(n - 1, p)


def _gamma_p_mod(n: int, p: int, precision: int) -> int:
    if n == 0:
        return 1
    return (-1) ** n * factorial_p_mod(n - 1, p, precision)


def gamma_p(x: PadicInt) -> PadicInt:
    if x.p == 2 and x.precision < 3:
        raise PrecisionError("Gamma_2 needs at least 3 known digits")
    return PadicInt(x.p, x.precision, _gamma_p_mod(x.residue, x.p, x.precision))


def gamma_p_closed(n: int, p: int) -> Fraction:
    """Gamma_p(n + 1) from (-1)^(n+1) n! / ([n/p]! p^[n/p])."""
    k = n // p
    return Fraction((-1) ** (n + 1) * math.factorial(n), math.factorial(k) * p**k)


def gamma_p_block(m: int, k: int, p: int) -> Fraction:
    """Gamma_p(m p + k + 1) for 0 <= k < p."""
    if not 0 <= k < p:
        raise ValueError("need 0 <= k < p")
    n = m * p + k
    return Fraction((-1) ** (n + 1) * math.factorial(n), math.factorial(m) * p**m)


def gamma_p_prime_power(k: int, p: int) -> Fraction:
    """Gamma_p(p^k) = (-1)^p (p^k)! / ((p^(k-1))! p^(p^(k-1))), k >= 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    big, small = p**k, p ** (k - 1)
    return Fraction((-1) ** p * math.factorial(big), math.factorial(small) * p**small)


def factorial_via_gamma(n: int, p: int) -> int:
    """n! rebuilt from Gamma_p values at the digit shifts of n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ds = []
    r = n
    while r:
        r, d = divmod(r, p)
        ds.append(d)
    top = len(ds) - 1
    s = sum(ds)
    out = (-1) ** (n + 1 - top) * (-p) ** ((n - s) // (p - 1))
    for i in range(top + 1):
        out *= gamma_p_nat(n // p**i + 1, p)
    return out


def gamma_q_nat(n: int, ctx: PrimeContext) -> int:
    """Exact Gamma_q(n) for an integer n >= 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        # h_l(-1) = -1 for every l, and Gamma_p(0) = 1
        return 1
    out = 1
    for ell in range(ctx.t):
        out *= gamma_p_nat((n - 1) // ctx.p**ell + 1, ctx.p)
    return out


def _gamma_q_precision(x: PadicInt, ctx: PrimeContext) -> None:
    if x.p != ctx.p:
        raise ValueError(f"argument is {x.p}-adic, context is {ctx.p}-adic")
    need = ctx.t + 2 if ctx.p == 2 else ctx.t
    if x.precision < need:
        raise PrecisionError(f"Gamma_q with t={ctx.t} needs {need} digits, have {x.precision}")


def gamma_q(x: PadicInt, ctx: PrimeContext) -> PadicInt:
    """Gamma_q(x) on Z_p, known to N - t + 1 digits."""
    _gamma_q_precision(x, ctx)
    y = x - 1
    out = None
    for ell in range(ctx.t):
        factor = gamma_p(h_ell(y, ell) + 1)
        out = factor if out is None else out * factor
    return out


@dataclass(frozen=True)
class ExponentPair:
    A: int
    B: int
    n: int


def exponents(n: int, ctx: PrimeContext) -> ExponentPair:
    """Sign and p-power exponents with Gamma_q(n+1) = (-1)^A p^-B n!_q.

    A = t + sum_{i<t} [n/p^i]; B = sum_{1<=i<=t} [n/p^i] - t [n/q].
    B is the p-adic valuation of the multiples-of-q-skipping factorial.
    """
    p, t = ctx.p, ctx.t
    a = t + sum(n // p**i for i in range(t))
    b = sum(n // p**i for i in range(1, t + 1)) - t * (n // ctx.q)
    return ExponentPair(a, b, n)


def ota_gamma(n: int, ctx: PrimeContext) -> Fraction:
    e = exponents(n, ctx)
    return Fraction((-1) ** e.A * factorial_q(n, ctx, FactorialVariant.QSKIP), ctx.p**e.B)


CLOSED_CASES = ("general", "mq+lambda", "q^s-1", "q^s")


def _q_power(n: int, q: int) -> int | None:
    s = 0
    while n > 1 and n % q == 0:
        n //= q
        s += 1
    return s if n == 1 and s >= 1 else None


def closed_form_exponents(n: int, ctx: PrimeContext, case: str = "general") -> tuple[int, int, int]:
    """(A, B, k) for Gamma_q(n+1) = (-1)^A p^-B n! / (k! p^(t k)) in the given case.

    The special cases use exponents simplified for that shape of n and agree
    with :func:`exponents`. Note [(q^s - 1)/q] = q^(s-1) - 1, and A jumps by
    t (not 1) from n = q^s - 1 to n = q^s.
    """
    p, t, q = ctx.p, ctx.t, ctx.q
    if case == "general":
        e = exponents(n, ctx)
        return e.A, e.B, n // q
    if case == "mq+lambda":
        m, lam = divmod(n, q)
        geo = (q - 1) // (p - 1)
        v = vp_int(math.factorial(lam), p)
        return t + lam + m * p * geo + v, m * geo - t * m + v, m
    if case in ("q^s-1", "q^s"):
        target = n + 1 if case == "q^s-1" else n
        s = _q_power(target, q)
        if s is None:
            raise ValueError(f"n={n} does not have the shape {case} for q={q}")
        top = sum(p ** (t * s - i) for i in range(t))
        b = sum(p ** (t * s - i) for i in range(1, t + 1)) - t * p ** (t * (s - 1))
        if case == "q^s-1":
            return top, b, q ** (s - 1) - 1
        return t + top, b, q ** (s - 1)
    raise ValueError(f"unknown case {case!r}; expected one of {CLOSED_CASES}")


def gamma_q_closed(n: int, ctx: PrimeContext, case: str = "general") -> Fraction:
    """Gamma_q(n + 1) via the factorial closed form for the selected case."""
    a, b, k = closed_form_exponents(n, ctx, case)
    den = math.factorial(k) * ctx.p ** (ctx.t * k + b)
    return Fraction((-1) ** a * math.factorial(n), den)


def functional_step(x: PadicInt, ctx: PrimeContext) -> tuple[PadicInt, str]:
    """Predict Gamma_q(x + 1) from Gamma_q(x).

    Returns the prediction and the branch used: ``"qZp"`` when q | x, else
    ``"k=<v_p(x)>"``.
    """
    if x.precision < ctx.t:
        raise PrecisionError("cannot decide x mod q")
    g = gamma_q(x, ctx)
    if x.residue % ctx.q == 0:
        return g * (-1) ** ctx.t, "qZp"
    k = valuation(x).v
    return g * h_ell(x, k) * (-1) ** (k + 1), f"k={k}"


@dataclass(frozen=True)
class IdentityCheck:
    lhs: PadicInt
    rhs: PadicInt
    branch: str = ""

    @property
    def holds(self) -> bool:
        return self.lhs.congruent(self.rhs)


def complement(x: PadicInt, ctx: PrimeContext) -> IdentityCheck:
    """Gamma_q(x) Gamma_q(1 - x) against its closed sign."""
    if x.precision < ctx.t + 1:
        raise PrecisionError(f"need {ctx.t + 1} digits")
    lhs = gamma_q(x, ctx) * gamma_q(1 - x, ctx)
    t = ctx.t
    if ctx.p != 2:
        sign, branch = (-1) ** (t - 1 + residue_rep(x, ctx)), "odd"
    else:
        xt = digits(x).digits[t]
        if x.residue % ctx.q == 0 or x.residue % 2 == 1:
            sign, branch = (-1) ** (t + xt), "qZ2-or-unit"
        else:
            sign, branch = (-1) ** (t + 1 + xt), "other"
    return IdentityCheck(lhs, PadicInt(x.p, lhs.precision, sign), branch)


def _check_multiplier(n: int, ctx: PrimeContext) -> None:
    if n < 2 or n % ctx.p == 0:
        raise ValueError(f"multiplier must be >= 2 and prime to p, got {n}")


def gauss_legendre(x: PadicInt, n: int, ctx: PrimeContext) -> IdentityCheck:
    """Multiplication formula for Gamma_q with multiplier n.

    lhs = Gamma_q(x) prod_i Gamma_q(i/n) / prod_i Gamma_q((x+i)/n),
    rhs = n^(R_t(x) - 1) (n^(q-1))^R'_t(x).
    """
    _check_multiplier(n, ctx)
    if x.precision < ctx.t + 2:
        raise PrecisionError(f"need {ctx.t + 2} digits")
    base = PadicInt(x.p, x.precision, pow(n, ctx.q - 1, x.modulus))
    if ctx.p == 2 and base.residue % 4 != 1:
        raise ValueError("for p = 2 the exponent base n^(q-1) must be 1 mod 4")
    inv_n = unit_inverse(PadicInt(x.p, x.precision, n))
    lhs = gamma_q(x, ctx)
    for i in range(n):
        lhs = lhs * gamma_q(inv_n * i, ctx)
        lhs = lhs * unit_inverse(gamma_q((x + i) * inv_n, ctx))
    r = residue_rep(x, ctx)
    rhs = PadicInt(x.p, x.precision, pow(n, r - 1, x.modulus)) * unit_pow(base, residue_rep_prime(x, ctx))
    return IdentityCheck(lhs, rhs)


def roots_product(n: int, ctx: PrimeContext, precision: int | None = None) -> tuple[PadicInt, bool]:
    """z = prod_{1<=j<n} Gamma_q(j/n) and whether z^4 = 1 at its precision."""
    _check_multiplier(n, ctx)
    prec = ctx.default_precision if precision is None else precision
    z = None
    for j in range(1, n):
        g = gamma_q(from_rational(j, n, ctx.p, prec), ctx)
        z = g if z is None else z * g
    return z, (z**4).congruent(1)


@dataclass(frozen=True)
class BinomialRatio:
    lhs: Fraction
    rhs: Fraction
    second_lhs: PadicInt | None
    second_rhs: PadicInt

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    @property
    def second_holds(self) -> bool:
        return self.second_lhs is not None and self.second_lhs.congruent(self.second_rhs)


def binomial_ratio(a: int, b: int, r: int, ctx: PrimeContext, precision: int | None = None) -> BinomialRatio:
    """C(n_r, m_r)/C(n_{r-1}, m_{r-1}) with n_r = b(q^r-1)/(q-1), m_r = a(q^r-1)/(q-1).

    The first form is compared exactly; the second, which evaluates Gamma_q at
    negative integers, after dividing out (-p)^v on both sides, mod p^N.
    """
    q = ctx.q
    if not 0 < a < b < q - 1:
        raise ValueError(f"need 0 < a < b < q - 1 = {q - 1}")
    if r < 1:
        raise ValueError("r must be >= 1")

    def rep(c, k):
        return c * (q**k - 1) // (q - 1)

    n1, m1, n0, m0 = rep(b, r), rep(a, r), rep(b, r - 1), rep(a, r - 1)
    lhs = Fraction(math.comb(n1, m1), math.comb(n0, m0))
    v = vp_int(math.comb(b, a), ctx.p)
    g = gamma_q_nat
    rhs = (-1) ** ctx.t * Fraction(-ctx.p) ** v * Fraction(g(1 + n1, ctx), g(1 + m1, ctx) * g(1 + n1 - m1, ctx))

    prec = ctx.default_precision if precision is None else precision
    second = gamma_q(from_integer(-m1, ctx.p, prec), ctx) * gamma_q(from_integer(m1 - n1, ctx.p, prec), ctx)
    second = second * unit_inverse(gamma_q(from_integer(-n1, ctx.p, prec), ctx))
    unit = lhs / Fraction(-ctx.p) ** v
    if unit.denominator % ctx.p == 0 or unit.numerator % ctx.p == 0:
        return BinomialRatio(lhs, rhs, None, second)
    return BinomialRatio(lhs, rhs, from_rational(unit.numerator, unit.denominator, ctx.p, second.precision), second)


@dataclass(frozen=True)
class LipschitzReport:
    distance: Fraction
    distance_exact: bool
    difference: Fraction
    difference_exact: bool
    upper_clause: bool | None
    lower_clause: bool | None


def lipschitz_probe(x: PadicInt, y: PadicInt, ctx: PrimeContext) -> LipschitzReport:
    """|x - y|_p next to |Gamma_q(x) - Gamma_q(y)|_p.

    ``upper_clause`` is the unit-distance bound |dGamma| <= |x - y| (None when
    |x - y| < 1). ``lower_clause`` records, without asserting anything,
    whether |dGamma| >= |x - y| when |x - y| = p^-s with t <= s and both
    norms are exactly known (None otherwise).
    """
    dist, dist_exact = abs_p(x - y)
    diff, diff_exact = abs_p(gamma_q(x, ctx) - gamma_q(y, ctx))
    upper = (diff <= dist) if dist_exact and dist == 1 else None
    lower = None
    if dist_exact and dist <= Fraction(1, ctx.q):
        # an inexact difference is an upper bound, which settles ">=" only if it is below dist
        if diff_exact or diff < dist:
            lower = diff >= dist
    return LipschitzReport(dist, dist_exact, diff, diff_exact, upper, lower)
