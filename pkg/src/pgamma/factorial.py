"""p-adic and q-adic factorials and the Wilson-type congruences.

Two skip predicates are in use for the q-adic factorial and they are not
interchangeable: ``QSKIP`` drops the multiples of q (this is what the
factorial tables and the Gamma_q exponent formulas need), ``COPRIME`` drops
every multiple of p (the only reading under which the window congruences
hold, e.g. 1*2*3 = 0 mod 3 for q = 9).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .padic import PrimeContext, vp_int

__all__ = [
    "FactorialVariant",
    "factorial_p",
    "factorial_p_mod",
    "factorial_q",
    "range_product",
    "WilsonVerdict",
    "wilson_check",
    "ratio_congruence",
    "NormReport",
    "corollary_norms",
]

# below this, a plain product beats the block-doubling setup
_DIRECT_LIMIT = 4096


class FactorialVariant(enum.Enum):
    QSKIP = "qskip"
    COPRIME = "coprime"

    def keeps(self, j: int, ctx: PrimeContext) -> bool:
        if self is FactorialVariant.QSKIP:
            return j % ctx.q != 0
        return j % ctx.p != 0


def factorial_p(n: int, p: int) -> int:
    """Product of 1 <= j <= n with p not dividing j."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return math.prod(j for j in range(1, n + 1) if j % p)


def factorial_q(n: int, ctx: PrimeContext, variant: FactorialVariant = FactorialVariant.QSKIP) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return range_product(1, n, ctx, variant) if n else 1


def range_product(a: int, length: int, ctx: PrimeContext, variant: FactorialVariant) -> int:
    """Product of the j in [a, a + length - 1] that the variant keeps."""
    if length < 0:
        raise ValueError("length must be nonnegative")
    return math.prod(j for j in range(a, a + length) if variant.keeps(j, ctx))


def _poly_mul(f: list[int], g: list[int], n: int, m: int) -> list[int]:
    out = [0] * n
    for i, a in enumerate(f):
        if a:
            for j in range(n - i):
                out[i + j] += a * g[j]
    return [c % m for c in out]


def _poly_shift(f: list[int], a: int, m: int) -> list[int]:
    """Coefficients of f(y + a) mod m."""
    n = len(f)
    out = [0] * n
    for j in range(n - 1, -1, -1):
        c = f[j]
        if not c:
            continue
        apow = 1
        for i in range(j, -1, -1):
            out[i] += c * math.comb(j, i) * apow
            apow *= a
    return [c % m for c in out]


def factorial_p_mod(n: int, p: int, precision: int) -> int:
    """n!_p mod p**precision without forming n!_p.

    The j coprime to p come in blocks k*p + 1, ..., k*p + p - 1, whose
    product is B(k) for the polynomial B(y) = prod_i (p*y + i). The
    coefficient of y**j in B is divisible by p**j, so B and every product of
    its shifts can be truncated below degree ``precision``. The product of
    the first m blocks is built by binary doubling on
    G_m(y) = prod_{k<m} B(y + k), using G_{a+b}(y) = G_a(y) G_b(y + a).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    mod = p**precision
    if n < _DIRECT_LIMIT:
        r = 1
        for j in range(1, n + 1):
            if j % p:
                r = r * j % mod
        return r
    m, rem = divmod(n, p)
    if m == 0:
        return math.prod(range(1, rem + 1)) % mod
    size = precision
    block = [1] + [0] * (size - 1)
    for i in range(1, p):
        block = _poly_mul(block, _linear(p, i, size), size, mod)
    g = list(block)
    count = 1
    for bit in bin(m)[3:]:
        g = _poly_mul(g, _poly_shift(g, count, mod), size, mod)
        count *= 2
        if bit == "1":
            g = _poly_mul(g, _poly_shift(block, count, mod), size, mod)
            count += 1
    r = g[0]
    base = m * p
    for i in range(1, rem + 1):
        r = r * (base + i) % mod
    return r


def _linear(p: int, i: int, size: int) -> list[int]:
    lin = [i, p] + [0] * (size - 2)
    return lin[:size]


@dataclass(frozen=True)
class WilsonVerdict:
    """Outcome of a window-product congruence check."""

    holds: bool
    expected: int
    residue: int
    modulus: int

    @property
    def kind(self) -> str:
        if not self.holds:
            return "fails"
        return "holds_plus_one" if self.expected == 1 else "holds_minus_one"


def _check_s(ctx: PrimeContext, s: int) -> None:
    lo = 3 if ctx.p == 2 else 1
    if s < lo:
        raise ValueError(f"s must be >= {lo} for p = {ctx.p}, got {s}")


def wilson_check(a: int, s: int, ctx: PrimeContext) -> WilsonVerdict:
    """Product of the p**s consecutive integers from a, skipping multiples of p.

    Expected to be -1 mod p**s for odd p and +1 mod 2**s for p = 2, s >= 3.
    """
    _check_s(ctx, s)
    if a < 1:
        raise ValueError("a must be >= 1")
    mod = ctx.p**s
    r = range_product(a, mod, ctx, FactorialVariant.COPRIME) % mod
    expected = 1 if ctx.p == 2 else mod - 1
    return WilsonVerdict(r == expected, 1 if ctx.p == 2 else -1, r, mod)


def ratio_congruence(n: int, m: int, s: int, ctx: PrimeContext) -> WilsonVerdict:
    """(n + m p^s)!_q / n!_q against (-1)^m mod p^s (odd p) or 1 mod 2^s."""
    _check_s(ctx, s)
    if n < 0 or m < 1:
        raise ValueError("need n >= 0 and m >= 1")
    mod = ctx.p**s
    num = factorial_q(n + m * mod, ctx, FactorialVariant.COPRIME)
    den = factorial_q(n, ctx, FactorialVariant.COPRIME)
    q, rem = divmod(num, den)
    assert rem == 0
    r = q % mod
    expected = 1 if ctx.p == 2 else (-1) ** m
    return WilsonVerdict(r == expected % mod, expected, r, mod)


@dataclass(frozen=True)
class NormReport:
    unit_norm: Fraction
    combined_norm: Fraction
    bound: Fraction

    @property
    def holds(self) -> bool:
        return self.unit_norm == 1 and self.combined_norm <= self.bound


def _norm(z: int, p: int) -> Fraction:
    v = vp_int(z, p)
    return Fraction(0) if v is None else Fraction(1, p**v)


def corollary_norms(n: int, s: int, ctx: PrimeContext) -> NormReport:
    """|n!_q|_p and |(n + p^s)!_q + n!_q|_p (minus, for p = 2) against p^-s."""
    _check_s(ctx, s)
    a = factorial_q(n, ctx, FactorialVariant.COPRIME)
    b = factorial_q(n + ctx.p**s, ctx, FactorialVariant.COPRIME)
    combined = b - a if ctx.p == 2 else b + a
    return NormReport(_norm(a, ctx.p), _norm(combined, ctx.p), Fraction(1, ctx.p**s))
