"""Rational functions whose denominators are products of binomials ``1 - X**m``."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping

from ..scalars import Cyclotomic
from .laurent import LaurentPoly, NotDivisible, exact_divide


class FactoredRational:
    """``numerator / prod(1 - X**m)`` with the ``m`` kept as a multiset.

    No gcd computations: sums use the multiset maximum of the two
    denominators, and :meth:`reduced` cancels whole factors that divide the
    numerator exactly.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: LaurentPoly, denominator: Iterable[tuple] | Mapping = ()):
        self.numerator = numerator
        den = Counter(denominator)
        zero = (0,) * len(numerator.vars)
        for m, k in den.items():
            if len(m) != len(numerator.vars):
                raise ValueError(f"denominator monomial {m} does not match {numerator.vars}")
            if m == zero:
                raise ValueError("denominator factor 1 - 1 is zero")
            if k < 0:
                raise ValueError("negative denominator multiplicity")
        self.denominator = +den

    @property
    def vars(self):
        return self.numerator.vars

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "FactoredRational":
        return cls(p, ())

    @classmethod
    def constant(cls, vars, c) -> "FactoredRational":
        return cls(LaurentPoly.constant(vars, c), ())

    def denominator_poly(self) -> LaurentPoly:
        out = LaurentPoly.constant(self.vars, 1)
        for m, k in sorted(self.denominator.items()):
            for _ in range(k):
                out = out.mul_binomial(m)
        return out

    # --- arithmetic -------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, FactoredRational):
            if other.vars != self.vars:
                raise ValueError(f"variable sets differ: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, LaurentPoly):
            return FactoredRational(other, ())
        if isinstance(other, (int, _RationalABC, Cyclotomic)):
            return FactoredRational.constant(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not other.numerator:
            return self
        if not self.numerator:
            return other
        common = self.denominator | other.denominator
        return FactoredRational(
            _expand(self.numerator, common - self.denominator)
            + _expand(other.numerator, common - other.denominator),
            common,
        )

    __radd__ = __add__

    def __neg__(self):
        return FactoredRational(-self.numerator, self.denominator)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, _RationalABC, Cyclotomic)):
            return FactoredRational(self.numerator.scale(other), self.denominator)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return FactoredRational(
            self.numerator * other.numerator, self.denominator + other.denominator
        )

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, (int, _RationalABC, Cyclotomic)):
            return FactoredRational(self.numerator / c, self.denominator)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers of factored rationals are not supported")
        num = self.numerator ** k
        return FactoredRational(num, Counter({m: c * k for m, c in self.denominator.items()}))

    def __bool__(self):
        return bool(self.numerator)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        # a/A == b/B  iff  a * (L/A) == b * (L/B) for the common multiple L.
        common = self.denominator | other.denominator
        return _expand(self.numerator, common - self.denominator) == _expand(
            other.numerator, common - other.denominator
        )

    __hash__ = None

    def adams(self, n: int) -> "FactoredRational":
        return FactoredRational(
            self.numerator.adams(n),
            Counter({tuple(k * n for k in m): c for m, c in self.denominator.items()}),
        )

    def reduced(self) -> "FactoredRational":
        """Cancel every denominator factor that divides the numerator exactly."""
        num = self.numerator
        den = Counter(self.denominator)
        if not num:
            return FactoredRational(num, ())
        for m in sorted(den):
            divisor = LaurentPoly.constant(self.vars, 1).mul_binomial(m)
            while den[m]:
                try:
                    num = exact_divide(num, divisor)
                except NotDivisible:
                    break
                den[m] -= 1
        return FactoredRational(num, den)

    def evaluate(self, values):
        den = 1
        for m, k in self.denominator.items():
            mono = 1
            for v, e in zip(self.vars, m):
                if e:
                    mono = mono * values[v] ** e
            den = den * (1 - mono) ** k
        return self.numerator.evaluate(values) / den

    def __repr__(self):
        den = " * ".join(
            f"(1 - {LaurentPoly(self.vars, {m: 1})})" + (f"^{k}" if k > 1 else "")
            for m, k in sorted(self.denominator.items())
        )
        return f"FactoredRational(({self.numerator}) / ({den or '1'}))"


def _expand(num: LaurentPoly, factors: Counter) -> LaurentPoly:
    for m, k in sorted(factors.items()):
        for _ in range(k):
            num = num.mul_binomial(m)
    return num


def rational_normalize(r: FactoredRational) -> LaurentPoly:
    """Clear every denominator factor by exact division; return the polynomial.

    Raises :class:`NotDivisible` when the value is not a Laurent polynomial.
    """
    num = r.numerator
    for m, k in sorted(r.denominator.items()):
        divisor = LaurentPoly.constant(r.vars, 1).mul_binomial(m)
        for _ in range(k):
            num = exact_divide(num, divisor)
    return num
