"""The universal point-count polynomials H_{g,n,p} and their rational ancestors.

Variables are ``x1..xg, z`` for the universal polynomial, plus ``t`` for the
rational functions it is built from.
"""

from __future__ import annotations

import hashlib
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping

from .partitions import Partition, cell_stats, enumerate_decompositions, enumerate_partitions
from .polyalg import FactoredRational, LaurentPoly, NotDivisible, TruncSeries
from .polyalg import exact_divide, plethystic_log, rational_normalize
from .scalars import moebius

log = logging.getLogger(__name__)

ENGINE_VERSION = "1"


class InvariantViolation(AssertionError):
    """A computed object broke a property the theory guarantees (bug class)."""


def x_vars(g: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, g + 1))


def h_vars(g: int) -> tuple[str, ...]:
    return x_vars(g) + ("z",)


def rational_vars(g: int) -> tuple[str, ...]:
    return x_vars(g) + ("z", "t")


def z_g(g: int, t_arg: Mapping[str, int]) -> FactoredRational:
    """``prod_i (1 - x_i T)(1 - x_i^-1 z T) / ((1 - T)(1 - z T))`` with ``T = t_arg``.

    ``t_arg`` is a monomial in ``t`` and ``z`` given as an exponent map.
    """
    if g < 0:
        raise ValueError(f"genus must be nonnegative, got {g}")
    vars = rational_vars(g)
    T = tuple(int(t_arg.get(v, 0)) for v in vars)
    if any(T[:g]):
        raise ValueError("the substituted monomial may only involve t and z")
    zpos = g
    num = LaurentPoly.constant(vars, 1)
    for i in range(g):
        a = list(T)
        a[i] += 1
        num = num.mul_binomial(tuple(a))
        b = list(T)
        b[i] -= 1
        b[zpos] += 1
        num = num.mul_binomial(tuple(b))
    zT = list(T)
    zT[zpos] += 1
    return FactoredRational(num, [T, tuple(zT)])


@lru_cache(maxsize=None)
def zcal_term(g: int, p: int, la: Partition) -> FactoredRational:
    """The product over the cells ``s`` of ``la`` of
    ``(-t^(a-l) z^a)^p t^((1-g)(2l+1)) Z_g(x, z, t^h z^a)``."""
    la = Partition(la)
    if la.size < 1:
        raise ValueError("zcal_term needs a nonempty partition")
    vars = rational_vars(g)
    t_exp, z_exp, sign = 0, 0, 1
    result = None
    for s in cell_stats(la):
        t_exp += p * (s.arm - s.leg) + (1 - g) * (2 * s.leg + 1)
        z_exp += p * s.arm
        if p % 2:
            sign = -sign
        factor = z_g(g, {"t": s.hook, "z": s.arm})
        result = factor if result is None else result * factor
    mono = [0] * len(vars)
    mono[g] = z_exp
    mono[g + 1] = t_exp
    return FactoredRational(result.numerator.shift(tuple(mono), sign), result.denominator)


def _times_boundary(r: FactoredRational, g: int) -> FactoredRational:
    """Multiply by ``(1 - t)(1 - z t)``, cancelling denominator factors when present."""
    vars = rational_vars(g)
    num = r.numerator
    den = Counter(r.denominator)
    for m in (_mono(vars, t=1), _mono(vars, t=1, z=1)):
        if den[m]:
            den[m] -= 1
        else:
            num = num.mul_binomial(m)
    return FactoredRational(num, den)


def _mono(vars, **exps) -> tuple:
    return tuple(exps.get(v, 0) for v in vars)


def _sum_grouped(terms) -> FactoredRational:
    """Sum factored rationals, first merging those with equal denominators."""
    groups: dict = {}
    for t in terms:
        key = tuple(sorted(t.denominator.items()))
        if key in groups:
            groups[key] = groups[key] + t.numerator
        else:
            groups[key] = t.numerator
    total = None
    for key in sorted(groups, key=lambda k: sum(c for _, c in k)):
        part = FactoredRational(groups[key], dict(key)).reduced()
        total = part if total is None else (total + part).reduced()
    return total


def hcal_partition_term(g: int, p: int, la0: Partition) -> FactoredRational:
    """The ``la0`` summand of H_{g,n,p} (before normalization), reduced."""
    la0 = Partition(la0)
    terms = []
    for dec in enumerate_decompositions(la0):
        r, sigma = dec.r, dec.sigma
        coef = Fraction(moebius(r), r) * (-1) ** sigma * factorial(sigma)
        if not coef:
            continue
        prod = None
        for la, k in dec.mult:
            coef /= factorial(k)
            factor = zcal_term(g, p, la).adams(r) ** k
            prod = factor if prod is None else prod * factor
        prod = prod * (coef.numerator if coef.denominator == 1 else coef)
        terms.append(_times_boundary(prod, g))
    return _sum_grouped(terms)


def _hcal_term_job(args):
    g, p, la0 = args
    return hcal_partition_term(g, p, la0)


def hcal_rational(g: int, n: int, p: int, workers: int | None = None) -> FactoredRational:
    if n < 1 or g < 0:
        raise ValueError(f"hcal needs n >= 1 and g >= 0, got g={g}, n={n}")
    jobs = [(g, p, la0) for la0 in enumerate_partitions(n)]
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_hcal_term_job, jobs))
    else:
        parts = [_hcal_term_job(j) for j in jobs]
    # Reduction order is fixed by the partition order, so results are deterministic.
    return _sum_grouped(parts)


@lru_cache(maxsize=64)
def hcal(g: int, n: int, p: int, workers: int | None = None) -> LaurentPoly:
    """The Laurent polynomial H_{g,n,p}(x, z, t) from the finite partition sum."""
    total = hcal_rational(g, n, p, workers)
    try:
        return rational_normalize(total)
    except NotDivisible as exc:
        raise InvariantViolation(
            f"H_{{{g},{n},{p}}} is not a Laurent polynomial: {exc}"
        ) from exc


def zcal_series(g: int, p: int, order: int) -> TruncSeries:
    coeffs = [FactoredRational.constant(rational_vars(g), 1)]
    for k in range(1, order + 1):
        total = FactoredRational.constant(rational_vars(g), 0)
        for la in enumerate_partitions(k):
            total = total + zcal_term(g, p, la)
        coeffs.append(total.reduced())
    return TruncSeries(coeffs, order, FactoredRational.constant(rational_vars(g), 0))


def hcal_series(g: int, n: int, p: int) -> LaurentPoly:
    """H_{g,n,p} read off ``(1 - t)(1 - z t) Log(Z_{g,p})`` at ``T^n`` (test oracle)."""
    lg = plethystic_log(zcal_series(g, p, n))
    return rational_normalize(_times_boundary(lg[n].reduced(), g))


@dataclass(frozen=True)
class UniversalPoly:
    g: int
    n: int
    p: int
    poly: LaurentPoly
    provenance: str

    @property
    def z_shift(self) -> int:
        return (self.g - 1) * self.n**2 + self.p * self.n * (self.n + 1) // 2


def provenance_hash(*key) -> str:
    text = ",".join(str(k) for k in key) + f"|engine={ENGINE_VERSION}"
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def evaluate_t_one(h: LaurentPoly) -> LaurentPoly:
    """Set ``t = 1`` in a polynomial over ``(..., t)`` and drop ``t``."""
    if h.vars[-1] != "t":
        raise ValueError("expected t as the last variable")
    out: dict = {}
    for e, c in h.terms.items():
        key = e[:-1]
        v = out.get(key, 0) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return LaurentPoly(h.vars[:-1], out)


def symmetry_images(poly: LaurentPoly, g: int):
    """Images of ``poly`` under the generators of the hyperoctahedral action on x1..xg."""
    vars = poly.vars
    xs = x_vars(g)
    z = LaurentPoly.var(vars, "z")
    for i in range(g - 1):
        a, b = xs[i], xs[i + 1]
        yield f"{a}<->{b}", poly.substitute(
            {a: LaurentPoly.var(vars, b), b: LaurentPoly.var(vars, a)}, vars
        )
    for v in xs:
        flip = LaurentPoly.monomial(vars, {v: -1, "z": 1})
        yield f"{v}->z/{v}", poly.substitute({v: flip}, vars)


def boundary_factor(g: int, vars=None) -> LaurentPoly:
    """``prod_{i <= g} (1 - x_i)(1 - z / x_i)``."""
    vars = vars or h_vars(g)
    out = LaurentPoly.constant(vars, 1)
    for i in range(1, g + 1):
        out = out.mul_binomial(_mono(vars, **{f"x{i}": 1}))
        out = out.mul_binomial(_mono(vars, **{f"x{i}": -1, "z": 1}))
    return out


def check_universal(poly: LaurentPoly, g: int, n: int, p: int) -> None:
    if not poly.has_integer_coefficients():
        raise InvariantViolation(f"H_{{{g},{n},{p}}} has non-integer coefficients")
    for name, image in symmetry_images(poly, g):
        if image != poly:
            raise InvariantViolation(f"H_{{{g},{n},{p}}} is not invariant under {name}")
    shift = (g - 1) * n * n + p * n * (n + 1) // 2
    divisor = boundary_factor(g).shift(_mono(h_vars(g), z=shift))
    try:
        quotient = exact_divide(poly, divisor)
    except NotDivisible as exc:
        raise InvariantViolation(
            f"H_{{{g},{n},{p}}} is not divisible by z^{shift} prod(1-x_i)(1-z/x_i)"
        ) from exc
    # Outside p >= 0 the quotient may carry negative powers of z.
    if p >= 0 and quotient and quotient.min_exponents()[g] < 0:
        raise InvariantViolation(
            f"H_{{{g},{n},{p}}} / z^{shift} prod(...) has negative powers of z"
        )


@lru_cache(maxsize=64)
def universal_h(g: int, n: int, p: int, workers: int | None = None, check: bool = True) -> UniversalPoly:
    """``(-1)^(pn) z^((g-1)n^2 + p n(n+1)/2) H_{g,n,p}|_{t=1}``.

    Any integer ``p`` is accepted; the counting interpretation needs ``p >= 1``.
    """
    if g < 0 or n < 1:
        raise ValueError(f"universal_h needs g >= 0 and n >= 1; got {(g, n, p)}")
    h = evaluate_t_one(hcal(g, n, p, workers))
    shift = (g - 1) * n * n + p * n * (n + 1) // 2
    sign = -1 if (p * n) % 2 else 1
    poly = h.shift(_mono(h_vars(g), z=shift), sign)
    if poly.has_integer_coefficients():
        poly = poly.with_integer_coefficients()
    if check:
        check_universal(poly, g, n, p)
    return UniversalPoly(g, n, p, poly, provenance_hash("H", g, n, p))
