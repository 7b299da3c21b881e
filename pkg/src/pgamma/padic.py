"""Truncated-precision arithmetic in Z_p.

An element of Z_p is stored as a residue modulo p**N together with its
precision N (the number of known base-p digits). Precision is only ever
lost explicitly: digit shifts cost the shifted digits, division by q costs
t digits, everything else keeps the minimum operand precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

__all__ = [
    "PrecisionError",
    "PrimeContext",
    "PadicInt",
    "DigitExpansion",
    "Valuation",
    "is_prime",
    "make_context",
    "from_integer",
    "from_rational",
    "valuation",
    "abs_p",
    "digits",
    "h_ell",
    "residue_rep",
    "residue_rep_prime",
    "add",
    "sub",
    "mul",
    "unit_inverse",
    "unit_pow",
    "vp_int",
]


class PrecisionError(ValueError):
    """Raised when an operation needs more known digits than are available."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def vp_int(n: int, p: int) -> int | None:
    """p-adic valuation of a nonzero integer; ``None`` for zero."""
    if n == 0:
        return None
    n = abs(n)
    if p == 2:
        return (n & -n).bit_length() - 1
    v = 0
    while n % p == 0:
        # strip p^(2^k) for the largest k that divides, so big valuations stay cheap
        step, k = p, 1
        while n % (step * step) == 0:
            step *= step
            k *= 2
        n //= step
        v += k
    return v


@dataclass(frozen=True)
class PrimeContext:
    p: int
    t: int
    default_precision: int = 12

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.t < 1:
            raise ValueError(f"t must be >= 1, got {self.t}")
        if self.default_precision < 1:
            raise ValueError(f"precision must be >= 1, got {self.default_precision}")

    @property
    def q(self) -> int:
        return self.p**self.t

    def embed(self, z: int | Fraction, precision: int | None = None) -> PadicInt:
        """Embed an integer or a p-integral rational at this context's prime."""
        n = self.default_precision if precision is None else precision
        if isinstance(z, Fraction):
            return from_rational(z.numerator, z.denominator, self.p, n)
        return from_integer(z, self.p, n)


def make_context(p: int, t: int, default_precision: int = 12) -> PrimeContext:
    return PrimeContext(p, t, default_precision)


@dataclass(frozen=True)
class PadicInt:
    """An element of Z_p known modulo ``p**precision``.

    Equality is structural (same prime, precision and residue); use
    :meth:`congruent` to compare values known to different precisions.
    """

    p: int
    precision: int
    residue: int

    def __post_init__(self):
        if self.precision < 1:
            raise PrecisionError(f"precision must be >= 1, got {self.precision}")
        object.__setattr__(self, "residue", self.residue % self.p**self.precision)

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    def _coerce(self, other) -> PadicInt:
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise ValueError(f"mismatched primes {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return PadicInt(self.p, self.precision, other)
        if isinstance(other, Fraction):
            return from_rational(other.numerator, other.denominator, self.p, self.precision)
        return NotImplemented

    def _binop(self, other, op):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = min(self.precision, other.precision)
        return PadicInt(self.p, n, op(self.residue, other.residue))

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binop(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return PadicInt(self.p, self.precision, -self.residue)

    def __pow__(self, k: int):
        if k < 0:
            return unit_inverse(self) ** (-k)
        return PadicInt(self.p, self.precision, pow(self.residue, k, self.modulus))

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def with_precision(self, n: int) -> PadicInt:
        if n > self.precision:
            raise PrecisionError(f"cannot raise precision from {self.precision} to {n}")
        return PadicInt(self.p, n, self.residue)

    def congruent(self, other, n: int | None = None) -> bool:
        """True if both values agree modulo p**n (default: shared precision)."""
        other = self._coerce(other)
        shared = min(self.precision, other.precision)
        if n is None:
            n = shared
        elif n > shared:
            raise PrecisionError(f"cannot compare at {n} digits, only {shared} known")
        return (self.residue - other.residue) % self.p**n == 0

    def digit_string(self) -> str:
        ds = ",".join(str(d) for d in digits(self).digits)
        return f"{ds} + O({self.p}^{self.precision})"

    def __str__(self):
        return f"{self.residue} + O({self.p}^{self.precision})"


@dataclass(frozen=True)
class DigitExpansion:
    p: int
    digits: tuple[int, ...]

    @property
    def digit_sum(self) -> int:
        return sum(self.digits)

    def value(self) -> int:
        return sum(d * self.p**j for j, d in enumerate(self.digits))


class Valuation(NamedTuple):
    v: int
    exact: bool


def from_integer(z: int, p: int, precision: int) -> PadicInt:
    return PadicInt(p, precision, z)


def from_rational(a: int, b: int, p: int, precision: int) -> PadicInt:
    if b == 0:
        raise ZeroDivisionError("zero denominator")
    g = Fraction(a, b)
    if g.denominator % p == 0:
        raise ValueError(f"{a}/{b} is not a p-adic integer at p={p}")
    m = p**precision
    return PadicInt(p, precision, g.numerator * pow(g.denominator, -1, m))


def valuation(x: PadicInt) -> Valuation:
    """Index of the lowest nonzero digit; inexact (a lower bound) when x = 0 + O(p^N)."""
    if x.residue == 0:
        return Valuation(x.precision, False)
    return Valuation(vp_int(x.residue, x.p), True)


def abs_p(x: PadicInt) -> tuple[Fraction, bool]:
    """|x|_p as an exact rational, flagged False when it is only an upper bound."""
    v, exact = valuation(x)
    return Fraction(1, x.p**v), exact


def digits(x: PadicInt) -> DigitExpansion:
    r = x.residue
    out = []
    for _ in range(x.precision):
        r, d = divmod(r, x.p)
        out.append(d)
    return DigitExpansion(x.p, tuple(out))


def h_ell(x: PadicInt, ell: int) -> PadicInt:
    """Drop the lowest ``ell`` digits: sum_{j>=ell} x_j p^(j-ell), known to N - ell digits."""
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    if ell >= x.precision:
        raise PrecisionError(f"h_{ell} needs more than {x.precision} digits")
    return PadicInt(x.p, x.precision - ell, x.residue // x.p**ell)


def residue_rep(x: PadicInt, ctx: PrimeContext) -> int:
    """The representative of x mod q lying in {1, ..., q}."""
    if x.precision < ctx.t:
        raise PrecisionError(f"need {ctx.t} digits to reduce mod q, have {x.precision}")
    return x.residue % ctx.q or ctx.q


def residue_rep_prime(x: PadicInt, ctx: PrimeContext) -> PadicInt:
    """(x - R_t(x)) / q, known to N - t digits."""
    r = residue_rep(x, ctx)
    if x.precision == ctx.t:
        raise PrecisionError("no digits left after dividing by q")
    return PadicInt(x.p, x.precision - ctx.t, (x.residue - r) // ctx.q)


def add(x: PadicInt, y: PadicInt) -> PadicInt:
    return x + y


def sub(x: PadicInt, y: PadicInt) -> PadicInt:
    return x - y


def mul(x: PadicInt, y: PadicInt) -> PadicInt:
    return x * y


def unit_inverse(x: PadicInt) -> PadicInt:
    if not x.is_unit():
        raise ValueError(f"{x} is not a p-adic unit")
    return PadicInt(x.p, x.precision, pow(x.residue, -1, x.modulus))


def unit_pow(u: PadicInt, w: PadicInt) -> PadicInt:
    """u**w for a 1-unit u and p-adic exponent w.

    The exponent is replaced by its integer representative. For p odd,
    u**(p**k) = 1 mod p**(k+1), so the result is good to
    min(N_u, N_w + 1) digits; for p = 2 and u = 1 mod 4 it is
    min(N_u, N_w + 2).
    """
    if isinstance(w, int):
        w = PadicInt(u.p, u.precision, w)
    if w.p != u.p:
        raise ValueError(f"mismatched primes {u.p} and {w.p}")
    if u.p == 2:
        if u.precision < 2 or u.residue % 4 != 1:
            raise ValueError("base must be 1 mod 4 for p = 2")
        n = min(u.precision, w.precision + 2)
    else:
        if u.residue % u.p != 1:
            raise ValueError(f"base {u.residue} is not a 1-unit mod {u.p}")
        n = min(u.precision, w.precision + 1)
    return PadicInt(u.p, n, pow(u.residue, w.residue, u.p**n))
