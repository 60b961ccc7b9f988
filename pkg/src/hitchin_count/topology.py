"""Compactly supported Poincaré polynomial and Euler characteristic of N_n^beta(C, D).

``P(u) = sum_{d | n} psi_g(d) u^(degD (d-1) n^2 / d) Htilde_flat_{g,n,p,d,e~}(-u)``
with ``p = degD - (2g - 2)`` and ``e~ = e + n(n-1) degD / 2``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import gcd

from .scalars import divisors, moebius, psi_g_count
from .twist import flat_h_tilde
from .universal import InvariantViolation

log = logging.getLogger(__name__)


def shifted_degree(n: int, e: int, degD: int) -> int:
    return e + n * (n - 1) * degD // 2


def _check(g, n, degD, e):
    if g < 1:
        raise ValueError(f"need g >= 1, got {g}")
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if gcd(e, n) != 1:
        raise ValueError(f"e={e} and n={n} must be coprime")
    if degD < 1:
        raise ValueError(f"need degD >= 1, got {degD}")


@dataclass(frozen=True)
class PoincareResult:
    """Betti numbers ``coeffs[i] = b_i`` of compactly supported cohomology.

    ``in_stable_range`` is False when ``degD <= 2g - 2``: the formula is still
    evaluated but its geometric meaning is only established for ``degD > 2g - 2``.
    """

    g: int
    n: int
    degD: int
    e: int
    coeffs: tuple[int, ...]
    in_stable_range: bool = True
    terms: dict = field(default_factory=dict, compare=False)

    @property
    def degree_bound(self) -> int:
        return 2 * (self.n**2 - 1) * self.degD

    def at(self, u: int) -> int:
        return sum(c * u**i for i, c in enumerate(self.coeffs))

    def euler(self) -> int:
        return self.at(-1)

    def top(self) -> tuple[int, int]:
        """Highest degree with nonzero coefficient and that coefficient."""
        i = len(self.coeffs) - 1
        return i, self.coeffs[i]


def poincare_polynomial(g: int, n: int, degD: int, e: int) -> PoincareResult:
    _check(g, n, degD, e)
    p = degD - (2 * g - 2)
    if p < 1:
        log.warning("degD=%d <= 2g-2=%d: evaluating outside the stable range", degD, 2 * g - 2)
    et = shifted_degree(n, e, degD)
    total: dict[int, int] = {}
    terms = {}
    for d in divisors(n):
        flat = flat_h_tilde(g, n, p, d, et)
        weight = psi_g_count(g, d)
        shift = degD * (d - 1) * n * n // d
        terms[d] = flat
        for (k,), c in flat.terms.items():
            i = k + shift
            total[i] = total.get(i, 0) + weight * c * (-1) ** k
    total = {i: c for i, c in total.items() if c}
    if any(i < 0 for i in total):
        raise InvariantViolation(f"negative degree in P(u) for {(g, n, degD, e)}: {sorted(total)}")
    top = max(total, default=0)
    coeffs = tuple(int(total.get(i, 0)) for i in range(top + 1))
    negative = [(i, c) for i, c in enumerate(coeffs) if c < 0]
    if negative:
        raise InvariantViolation(f"P(u) for {(g, n, degD, e)} has negative coefficients {negative}")
    bound = 2 * (n * n - 1) * degD
    if top > bound:
        raise InvariantViolation(f"P(u) for {(g, n, degD, e)} has degree {top} > bound {bound}")
    return PoincareResult(g, n, degD, e, coeffs, p >= 1, terms)


def euler_closed_form(g: int, n: int, degD: int) -> int:
    special = degD % 2 == 1 and n % 4 == 2
    if g == 1:
        return 5 if special else 1
    value = moebius(n) * n ** (4 * g - 3)
    return -value if special else value


@dataclass(frozen=True)
class EulerReport:
    g: int
    n: int
    degD: int
    e: int
    from_poincare: int
    closed_form: int

    @property
    def value(self) -> int:
        return self.closed_form


def euler_report(g: int, n: int, degD: int, e: int) -> EulerReport:
    """Euler characteristic by both routes; raises if they disagree."""
    via_p = poincare_polynomial(g, n, degD, e).euler()
    closed = euler_closed_form(g, n, degD)
    if via_p != closed:
        raise InvariantViolation(
            f"Euler characteristic mismatch for {(g, n, degD, e)}: P(-1)={via_p}, closed form={closed}"
        )
    return EulerReport(g, n, degD, e, via_p, closed)


def euler_characteristic(g: int, n: int, degD: int, e: int) -> int:
    return euler_report(g, n, degD, e).value


def coprime_divisor_sum(n: int, d: int, et: int) -> int:
    """``sum_{j | gcd(d, e~)} j mu(n / j)``."""
    return sum(j * moebius(n // j) for j in divisors(gcd(d, et)))


@dataclass(frozen=True)
class GcdLemmaReport:
    n: int
    e: int
    degD: int
    e_tilde: int
    gcd: int
    special_case: bool
    gcd_ok: bool
    sums: dict
    sums_ok: bool

    @property
    def ok(self) -> bool:
        return self.gcd_ok and self.sums_ok


def gcd_lemma_check(n: int, e: int, degD: int) -> GcdLemmaReport:
    if n < 1 or gcd(e, n) != 1:
        raise ValueError(f"need n >= 1 and gcd(e, n) = 1; got n={n}, e={e}")
    et = shifted_degree(n, e, degD)
    special = degD % 2 == 1 and n % 4 == 2
    f = gcd(n, et)
    sums = {}
    sums_ok = True
    for d in divisors(n):
        got = coprime_divisor_sum(n, d, et)
        want = (-1) ** (d - 1) * moebius(n) if special else moebius(n)
        sums[d] = (got, want)
        sums_ok &= got == want
    return GcdLemmaReport(n, e, degD, et, f, special, f == (2 if special else 1), sums, sums_ok)
