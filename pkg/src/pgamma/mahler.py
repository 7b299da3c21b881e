"""Mahler coefficients of Gamma_q and their exponential generating function.

The coefficients a_eta of Gamma_q(x + 1) = sum_eta a_eta C(x, eta) are the
forward differences at 0 of n -> Gamma_q(n + 1); they are computed exactly
from integer Gamma_q values and used as ground truth. The generating-function
side is then a cross-check over a small set of sign conventions, plus one
closed form that holds exactly for every t.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .gamma import gamma_q_nat
from .padic import PadicInt, PrecisionError, PrimeContext, vp_int
from .series import FormalSeries

__all__ = [
    "MahlerCoefficients",
    "coefficients",
    "binomial_eval",
    "evaluate",
    "SignConvention",
    "CONVENTIONS",
    "CLASSICAL",
    "AS_WRITTEN",
    "delta_series",
    "lhs_series",
    "closed_lhs_series",
    "rhs_series",
    "GFReport",
    "gf_compare",
]


@dataclass(frozen=True)
class MahlerCoefficients:
    ctx: PrimeContext
    coeffs: tuple[int, ...]

    @property
    def K(self) -> int:
        return len(self.coeffs) - 1

    @property
    def valuations(self) -> tuple[int | None, ...]:
        return tuple(vp_int(a, self.ctx.p) for a in self.coeffs)

    def reconstruct(self, n: int) -> int:
        """sum_{eta <= n} a_eta C(n, eta); equals Gamma_q(n + 1) for n <= K."""
        return sum(a * math.comb(n, e) for e, a in enumerate(self.coeffs[: n + 1]))

    def to_json(self) -> dict:
        return {
            "p": self.ctx.p,
            "t": self.ctx.t,
            "K": self.K,
            "coeffs": [str(a) for a in self.coeffs],
            "valuations": list(self.valuations),
        }


def coefficients(ctx: PrimeContext, K: int) -> MahlerCoefficients:
    if K < 0:
        raise ValueError("K must be >= 0")
    row = [gamma_q_nat(k + 1, ctx) for k in range(K + 1)]
    out = []
    # row holds the eta-th difference table column after eta passes
    for _ in range(K + 1):
        out.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    return MahlerCoefficients(ctx, tuple(out))


def _log_floor(k: int, p: int) -> int:
    e = 0
    while p ** (e + 1) <= k:
        e += 1
    return e


def binomial_eval(x: PadicInt, k: int) -> PadicInt:
    """C(x, k) on Z_p.

    Evaluated exactly at the integer representative of x. Changing x by p^L
    moves C(x, k) by a multiple of p^(L - floor(log_p k)), so the result
    keeps N - floor(log_p k) digits.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return PadicInt(x.p, x.precision, 1)
    n = x.precision - _log_floor(k, x.p)
    if n < 1:
        raise PrecisionError(f"C(x, {k}) needs more than {x.precision} digits")
    return PadicInt(x.p, n, math.comb(x.residue, k))


def evaluate(x: PadicInt, mc: MahlerCoefficients, K: int | None = None) -> PadicInt:
    """Partial Mahler sum up to K, at the precision every term supports.

    A term a C(x, eta) is known to (precision of C) + v_p(a) digits; the
    result is capped at the precision of x. Truncation error beyond K is not
    included in the reported precision.
    """
    if x.p != mc.ctx.p:
        raise ValueError("prime mismatch")
    K = mc.K if K is None else K
    if K > mc.K:
        raise ValueError(f"only {mc.K + 1} coefficients available")
    prec = x.precision
    total = 0
    for e, a in enumerate(mc.coeffs[: K + 1]):
        if a == 0:
            continue
        b = binomial_eval(x, e)
        prec = min(prec, b.precision + vp_int(a, x.p))
        total += a * b.residue
    return PadicInt(x.p, prec, total)


@dataclass(frozen=True)
class SignConvention:
    """One reading of exp(x^q/q + s x) * delta.

    ``delta_sign``: delta is built on (delta_sign * x)^lambda.
    ``linear_sign``: s in the exponential.
    ``placement``: ``"inside"`` puts (-1)^t only in delta; ``"both"`` also
    multiplies the whole side by (-1)^t, cancelling it.
    """

    delta_sign: int
    linear_sign: int
    placement: str

    @property
    def label(self) -> str:
        d = "-x" if self.delta_sign < 0 else "x"
        s = "+" if self.linear_sign > 0 else "-"
        return f"delta({d}) exp(x^q/q {s} x) sign:{self.placement}"


CONVENTIONS = tuple(
    SignConvention(d, s, pl) for d, s, pl in itertools.product((-1, 1), (1, -1), ("inside", "both"))
)
AS_WRITTEN = SignConvention(-1, 1, "inside")
# reduces to exp(x + x^p/p) (1 - x^p)/(1 - x) at t = 1
CLASSICAL = SignConvention(1, 1, "both")


def delta_series(ctx: PrimeContext, D: int, delta_sign: int = -1) -> FormalSeries:
    """sum_{lambda < q} (delta_sign x)^lambda (-1)^t (-1)^v p^(v - t[lambda/q]), v = v_p(lambda!)."""
    if D < 0:
        raise ValueError("D must be >= 0")
    cs = [Fraction(0)] * (D + 1)
    for lam in range(min(ctx.q, D + 1)):
        v = vp_int(math.factorial(lam), ctx.p)
        cs[lam] = Fraction(delta_sign) ** lam * (-1) ** (ctx.t + v) * Fraction(ctx.p) ** (v - ctx.t * (lam // ctx.q))
    return FormalSeries(cs)


def _exp_arg(ctx: PrimeContext, D: int, coeff: Fraction, linear_sign: int) -> FormalSeries:
    return FormalSeries.monomial(linear_sign, 1, D) + FormalSeries.monomial(coeff, ctx.q, D)


def lhs_series(ctx: PrimeContext, D: int, convention: SignConvention = AS_WRITTEN) -> FormalSeries:
    arg = _exp_arg(ctx, D, Fraction(1, ctx.q), convention.linear_sign)
    out = arg.exp() * delta_series(ctx, D, convention.delta_sign)
    if convention.placement == "both":
        out = out.scale((-1) ** ctx.t)
    return out


def closed_lhs_series(ctx: PrimeContext, D: int) -> FormalSeries:
    """A closed form of sum (-1)^(eta+t) a_eta x^eta / eta! valid for every t.

    exp(x + sigma x^q / p^e) * sum_{lambda < q} (-1)^v p^-v x^lambda with
    e = (q - 1)/(p - 1), v = v_p(lambda!), sigma = (-1)^(p e + q). For t = 1
    this is exp(x + x^p/p)(1 - x^p)/(1 - x).
    """
    p, q = ctx.p, ctx.q
    e = (q - 1) // (p - 1)
    sigma = (-1) ** (p * e + q)
    arg = _exp_arg(ctx, D, Fraction(sigma, p**e), 1)
    cs = [Fraction(0)] * (D + 1)
    for lam in range(min(q, D + 1)):
        v = vp_int(math.factorial(lam), p)
        cs[lam] = Fraction((-1) ** v, p**v)
    return arg.exp() * FormalSeries(cs)


def rhs_series(mc: MahlerCoefficients, D: int) -> FormalSeries:
    """sum_{eta <= D} (-1)^(eta+t) a_eta x^eta / eta!."""
    if mc.K < D:
        raise ValueError(f"need {D + 1} coefficients, have {mc.K + 1}")
    t = mc.ctx.t
    return FormalSeries(Fraction((-1) ** (e + t) * mc.coeffs[e], math.factorial(e)) for e in range(D + 1))


def _frac_val(c: Fraction, p: int) -> int | None:
    if c == 0:
        return None
    return vp_int(c.numerator, p) - vp_int(c.denominator, p)


@dataclass
class GFReport:
    p: int
    t: int
    degree: int
    # label -> per-degree p-adic valuation of (lhs - rhs); None where they agree
    differences: dict[str, list[int | None]] = field(default_factory=dict)
    closed_form_exact: bool = False

    def mismatches(self, label: str) -> list[int]:
        return [d for d, v in enumerate(self.differences[label]) if v is not None]

    @property
    def exact_conventions(self) -> list[str]:
        return [lab for lab in self.differences if not self.mismatches(lab)]

    @property
    def classical_exact(self) -> bool:
        return CLASSICAL.label in self.exact_conventions

    @property
    def best_convention(self) -> str:
        def first_bad(lab):
            bad = self.mismatches(lab)
            return bad[0] if bad else self.degree + 1

        return max(self.differences, key=first_bad)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "t": self.t,
            "degree": self.degree,
            "exact_conventions": self.exact_conventions,
            "classical_convention": CLASSICAL.label,
            "classical_exact": self.classical_exact,
            "best_convention": self.best_convention,
            "closed_form_exact": self.closed_form_exact,
            "first_mismatch": {lab: (self.mismatches(lab) or [None])[0] for lab in self.differences},
            "difference_valuations": self.differences,
        }


def gf_compare(ctx: PrimeContext, D: int, mc: MahlerCoefficients | None = None) -> GFReport:
    if D < 0:
        raise ValueError("D must be >= 0")
    if mc is None or mc.K < D:
        mc = coefficients(ctx, D)
    rhs = rhs_series(mc, D)
    report = GFReport(ctx.p, ctx.t, D)
    for conv in CONVENTIONS:
        diff = lhs_series(ctx, D, conv) - rhs
        report.differences[conv.label] = [_frac_val(c, ctx.p) for c in diff.coeffs]
    report.closed_form_exact = closed_lhs_series(ctx, D) == rhs
    return report
