"""Truncated power series in a formal parameter ``T`` and the plethystic Exp/Log."""

from __future__ import annotations

from fractions import Fraction

from ..scalars import moebius


def _adams(c, r: int):
    return c.adams(r) if hasattr(c, "adams") else c


class TruncSeries:
    """``c_0 + c_1 T + ... + c_N T^N`` modulo ``T^(N+1)``.

    Coefficients may be any ring elements supporting ``+``, ``*``,
    multiplication by ``Fraction`` and (optionally) ``adams(r)``; plain
    rationals are treated as constants for the Adams operators.
    """

    __slots__ = ("order", "coeffs", "zero")

    def __init__(self, coeffs, order: int | None = None, zero=0):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("series order must be nonnegative")
        coeffs = coeffs[: order + 1]
        coeffs += [zero] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = coeffs
        self.zero = zero

    def __getitem__(self, i: int):
        return self.coeffs[i]

    def _like(self, coeffs):
        return TruncSeries(coeffs, self.order, self.zero)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(self.order, other.order)
        return TruncSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n, self.zero)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(self.order, other.order)
        return TruncSeries([self.coeffs[i] - other.coeffs[i] for i in range(n + 1)], n, self.zero)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self._like([c * other for c in self.coeffs])
        n = min(self.order, other.order)
        out = [self.zero] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return TruncSeries(out, n, self.zero)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return all(self.coeffs[i] - other.coeffs[i] == 0 for i in range(n + 1))

    __hash__ = None

    def adams(self, r: int) -> "TruncSeries":
        """``psi_r``: coefficients get ``psi_r`` and ``T^i`` becomes ``T^(r i)``."""
        out = [self.zero] * (self.order + 1)
        for i, c in enumerate(self.coeffs):
            if r * i > self.order:
                break
            out[r * i] = _adams(c, r)
        return self._like(out)

    def exp(self) -> "TruncSeries":
        if self.coeffs[0]:
            raise ValueError("exp needs a series without constant term")
        result = self._like([self.zero + 1])
        power = self._like([self.zero + 1])
        for k in range(1, self.order + 1):
            power = power * self * Fraction(1, k)
            result = result + power
        return result

    def log(self) -> "TruncSeries":
        if self.coeffs[0] - 1:
            raise ValueError("log needs a series with constant term 1")
        g = self._like([self.zero] + self.coeffs[1:])
        result = self._like([])
        power = self._like([self.zero + 1])
        for k in range(1, self.order + 1):
            power = power * g
            result = result + power * Fraction((-1) ** (k + 1), k)
        return result

    def __repr__(self):
        return f"TruncSeries(order={self.order}, coeffs={self.coeffs!r})"


def plethystic_exp(f: TruncSeries) -> TruncSeries:
    if f.coeffs[0]:
        raise ValueError("Exp needs a series without constant term")
    total = f._like([])
    for r in range(1, f.order + 1):
        total = total + f.adams(r) * Fraction(1, r)
    return total.exp()


def plethystic_log(f: TruncSeries) -> TruncSeries:
    if f.coeffs[0] - 1:
        raise ValueError("Log needs a series with constant term 1")
    lg = f.log()
    total = f._like([])
    for r in range(1, f.order + 1):
        mu = moebius(r)
        if mu:
            total = total + lg.adams(r) * Fraction(mu, r)
    return total
