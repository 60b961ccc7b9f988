"""Exact scalars: rationals, cyclotomic field elements, and small number theory."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational as _RationalABC

Rational = Fraction


def divisors(n: int) -> list[int]:
    """Positive divisors of ``n`` in increasing order."""
    if n < 1:
        raise ValueError(f"divisors() needs n >= 1, got {n}")
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def moebius(n: int) -> int:
    if n < 1:
        raise ValueError(f"moebius() is defined for n >= 1, got {n}")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def euler_phi(n: int) -> int:
    return sum(moebius(d) * (n // d) for d in divisors(n))


def psi_g_count(g: int, d: int) -> int:
    """Number of elements of exact order ``d`` in ``(Z/dZ)^(2g)``."""
    if g < 1 or d < 1:
        raise ValueError(f"psi_g_count needs g >= 1 and d >= 1, got g={g}, d={d}")
    return sum(moebius(j) * (d // j) ** (2 * g) for j in divisors(d))


def ramanujan_sum(d: int, i: int) -> int:
    """Sum of ``zeta**i`` over the primitive ``d``-th roots of unity."""
    if d < 1:
        raise ValueError(f"ramanujan_sum needs d >= 1, got {d}")
    g = gcd(d, i)
    return sum(j * moebius(d // j) for j in divisors(g))


# --- integer polynomials (coefficient lists, constant term first) -----------

def _trim(coeffs: list) -> list:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _poly_mul(a, b) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod_monic(num: list, den: list) -> tuple[list, list]:
    num = list(num)
    dn = len(den) - 1
    if len(num) <= dn:
        return [], _trim(num)
    quot = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        if c:
            quot[k - dn] = c
            for j in range(dn + 1):
                num[k - dn + j] -= c * den[j]
    return _trim(quot), _trim(num[:dn])


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> tuple[int, ...]:
    """Coefficients of the ``d``-th cyclotomic polynomial, constant term first."""
    if d < 1:
        raise ValueError(f"cyclotomic polynomial order must be >= 1, got {d}")
    poly = [-1] + [0] * (d - 1) + [1]
    for k in divisors(d)[:-1]:
        poly, rem = _poly_divmod_monic(poly, list(cyclotomic_polynomial(k)))
        assert not rem
    return tuple(poly)


class Cyclotomic:
    """Element of ``Q[x]/Phi_d(x)`` in the power basis.

    Instances are immutable and interoperate with ``int`` and ``Fraction``
    (which are embedded as constants of the same order).
    """

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs):
        if order < 1:
            raise ValueError(f"cyclotomic order must be >= 1, got {order}")
        phi = cyclotomic_polynomial(order)
        deg = len(phi) - 1
        values = [Fraction(c) for c in coeffs]
        if len(values) > deg:
            _, values = _poly_divmod_monic(values, list(phi))
        values = list(values) + [Fraction(0)] * (deg - len(values))
        self.order = order
        self.coeffs = tuple(values)
        self._hash = None

    @classmethod
    def root(cls, order: int, power: int = 1) -> "Cyclotomic":
        """The element ``zeta_order ** power`` with ``zeta_order = exp(2 pi i / order)``."""
        power %= order
        return cls(order, [0] * power + [1])

    @classmethod
    def constant(cls, order: int, value) -> "Cyclotomic":
        return cls(order, [value])

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise ValueError(
                    f"cyclotomic orders differ: {self.order} vs {other.order}"
                )
            return other
        if isinstance(other, (int, _RationalABC)):
            return Cyclotomic(self.order, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclotomic(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclotomic(self.order, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, _RationalABC)) and not isinstance(other, Cyclotomic):
            return Cyclotomic(self.order, [a * other for a in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclotomic(self.order, _poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        # Extended Euclid over Q[x] against Phi_d.
        if not self:
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        r0 = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        r1 = _trim(list(self.coeffs))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            lead = r1[-1]
            q = [Fraction(0)] * (len(r0) - len(r1) + 1)
            rem = list(r0)
            for k in range(len(rem) - 1, len(r1) - 2, -1):
                c = rem[k] / lead
                q[k - len(r1) + 1] = c
                for j in range(len(r1)):
                    rem[k - len(r1) + 1 + j] -= c * r1[j]
            rem = _trim(rem[: len(r1) - 1])
            qs = _poly_mul(q, s1)
            s_new = [
                (s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)
                for i in range(max(len(s0), len(qs)))
            ]
            r0, r1 = r1, rem
            s0, s1 = s1, s_new
        unit = r1[0]
        return Cyclotomic(self.order, [c / unit for c in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, _RationalABC)) and not isinstance(other, Cyclotomic):
            return Cyclotomic(self.order, [a / Fraction(other) for a in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic(self.order, [1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, (int, _RationalABC)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.order, self.coeffs))
        return self._hash

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def __complex__(self):
        import cmath

        z = cmath.exp(2j * cmath.pi / self.order)
        return complex(sum(float(c) * z**k for k, c in enumerate(self.coeffs)))

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z{self.order}^{k}")
        return "Cyclotomic(" + (" + ".join(terms) or "0") + ")"


def roots_of_unity(d: int, primitive: bool = False) -> list[Cyclotomic]:
    """All ``d``-th roots of unity (or only the primitive ones) as order-``d`` elements."""
    return [
        Cyclotomic.root(d, k)
        for k in range(d)
        if not primitive or gcd(k, d) == 1
    ]
