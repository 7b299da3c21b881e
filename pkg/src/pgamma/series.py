"""Truncated formal power series with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class FormalSeries:
    """c_0 + c_1 x + ... + c_D x^D + O(x^(D+1)).

    Arithmetic between series truncates to the smaller degree.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, degree: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if degree is not None:
            cs = (cs + [Fraction(0)] * (degree + 1))[: degree + 1]
        if not cs:
            raise ValueError("a series needs at least a constant term")
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, degree: int) -> FormalSeries:
        return cls([0], degree)

    @classmethod
    def monomial(cls, coeff, power: int, degree: int) -> FormalSeries:
        cs = [Fraction(0)] * (degree + 1)
        if power <= degree:
            cs[power] = Fraction(coeff)
        return cls(cs)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __eq__(self, other):
        if not isinstance(other, FormalSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        return f"FormalSeries({[str(c) for c in self.coeffs]})"

    def _align(self, other: FormalSeries) -> tuple[Sequence[Fraction], Sequence[Fraction], int]:
        d = min(self.degree, other.degree)
        return self.coeffs[: d + 1], other.coeffs[: d + 1], d

    def __add__(self, other: FormalSeries) -> FormalSeries:
        a, b, _ = self._align(other)
        return FormalSeries(x + y for x, y in zip(a, b))

    def __sub__(self, other: FormalSeries) -> FormalSeries:
        a, b, _ = self._align(other)
        return FormalSeries(x - y for x, y in zip(a, b))

    def __neg__(self) -> FormalSeries:
        return FormalSeries(-c for c in self.coeffs)

    def scale(self, c) -> FormalSeries:
        c = Fraction(c)
        return FormalSeries(c * x for x in self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, FormalSeries):
            return self.scale(other)
        a, b, d = self._align(other)
        out = [Fraction(0)] * (d + 1)
        for i, x in enumerate(a):
            if x:
                for j in range(d + 1 - i):
                    out[i + j] += x * b[j]
        return FormalSeries(out)

    __rmul__ = __mul__

    def substitute(self, c, k: int = 1) -> FormalSeries:
        """f(c x^k), truncated at the same degree."""
        c = Fraction(c)
        out = [Fraction(0)] * (self.degree + 1)
        for i, x in enumerate(self.coeffs):
            if i * k > self.degree:
                break
            out[i * k] += x * c**i
        return FormalSeries(out)

    def exp(self) -> FormalSeries:
        """exp(f) for f with zero constant term, via n g_n = sum_k k f_k g_{n-k}."""
        if self.coeffs[0] != 0:
            raise ValueError("formal exponential needs a zero constant term")
        d = self.degree
        df = [k * c for k, c in enumerate(self.coeffs)]
        g = [Fraction(1)] + [Fraction(0)] * d
        for n in range(1, d + 1):
            g[n] = sum((df[k] * g[n - k] for k in range(1, n + 1)), Fraction(0)) / n
        return FormalSeries(g)
