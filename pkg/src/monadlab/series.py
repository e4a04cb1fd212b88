"""Truncated power series in one variable with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class TruncatedSeries:
    """c_0 + c_1 h + ... + c_cap h^cap; products drop everything above h^cap."""

    __slots__ = ("cap", "coeffs")

    def __init__(self, coeffs: Sequence, cap: int):
        if cap < 0:
            raise ValueError("cap must be >= 0")
        cs = [Fraction(c) for c in list(coeffs)[: cap + 1]]
        cs += [Fraction(0)] * (cap + 1 - len(cs))
        self.cap = cap
        self.coeffs = tuple(cs)

    @classmethod
    def one(cls, cap: int) -> "TruncatedSeries":
        return cls([1], cap)

    @classmethod
    def linear(cls, a, cap: int) -> "TruncatedSeries":
        """1 + a*h."""
        return cls([1, a], cap)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i <= self.cap else Fraction(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, TruncatedSeries) and self.cap == other.cap and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.cap, self.coeffs))

    def __repr__(self) -> str:
        return f"TruncatedSeries({[str(c) for c in self.coeffs]}, cap={self.cap})"

    def _cap_with(self, other: "TruncatedSeries") -> int:
        return min(self.cap, other.cap)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        cap = self._cap_with(other)
        return TruncatedSeries([self[i] + other[i] for i in range(cap + 1)], cap)

    def __mul__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c * other for c in self.coeffs], self.cap)
        cap = self._cap_with(other)
        out = [Fraction(0)] * (cap + 1)
        for i, a in enumerate(self.coeffs[: cap + 1]):
            if a:
                for j in range(cap + 1 - i):
                    out[i + j] += a * other[j]
        return TruncatedSeries(out, cap)

    def inverse(self) -> "TruncatedSeries":
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("constant term is not invertible")
        out = [1 / c0]
        for n in range(1, self.cap + 1):
            s = sum(self.coeffs[i] * out[n - i] for i in range(1, n + 1))
            out.append(-s / c0)
        return TruncatedSeries(out, self.cap)

    def __pow__(self, e: int) -> "TruncatedSeries":
        return series_power(self, e)


def series_power(base: TruncatedSeries, exponent: int) -> TruncatedSeries:
    if exponent < 0:
        base = base.inverse()
        exponent = -exponent
    out = TruncatedSeries.one(base.cap)
    while exponent:
        if exponent & 1:
            out = out * base
        base = base * base
        exponent >>= 1
    return out
