"""Point counts of Hitchin moduli over finite fields from Frobenius data.

Counts are obtained by evaluating the universal (or twisted) polynomials at
Frobenius eigenvalues in high-precision complex arithmetic and rounding.
Genus one has an exact integer path through power sums.
"""

from __future__ import annotations

import json
import logging
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from pathlib import Path

import mpmath

from .scalars import divisors
from .twist import block_weights, cover_genus, twisted_h, twisted_h_tilde
from .universal import universal_h

log = logging.getLogger(__name__)


class CountingError(ValueError):
    """Invalid arithmetic input for a count."""


class FunctionalEquationViolated(CountingError):
    pass


class RootModulusViolated(CountingError):
    pass


class CoverInconsistent(CountingError):
    pass


class IntegralityFailed(ArithmeticError):
    """The evaluated count is not within tolerance of an integer."""

    def __init__(self, message, value=None, residual=None):
        super().__init__(message)
        self.value = value
        self.residual = residual


@dataclass(frozen=True)
class EvalPrecision:
    bits: int = 256
    integrality_tolerance: float = 2.0**-20

    def __post_init__(self):
        if self.bits < 64:
            raise ValueError(f"working precision must be at least 64 bits, got {self.bits}")
        if not self.integrality_tolerance > 0:
            raise ValueError("integrality tolerance must be positive")

    def context(self) -> mpmath.ctx_mp.MPContext:
        ctx = mpmath.MPContext()
        ctx.prec = self.bits
        return ctx


DEFAULT_PRECISION = EvalPrecision()


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(d for d in divisors(q) if d > 1)
    while q % p == 0:
        q //= p
    return q == 1


@dataclass(frozen=True)
class WeilDatum:
    """A curve's arithmetic, given by ``q``, its genus and ``P(T) = a_0 + ... + a_2g T^2g``."""

    q: int
    g: int
    zeta_numerator: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "zeta_numerator", tuple(int(a) for a in self.zeta_numerator))

    @classmethod
    def from_json_obj(cls, obj) -> "WeilDatum":
        try:
            return cls(int(obj["q"]), int(obj["g"]), tuple(obj["zeta_numerator"]))
        except (KeyError, TypeError) as exc:
            raise CountingError(f"malformed Weil datum: {exc}") from exc

    @classmethod
    def load(cls, path) -> "WeilDatum":
        return cls.from_json_obj(json.loads(Path(path).read_text()))

    def to_json_obj(self) -> dict:
        return {"q": self.q, "g": self.g, "zeta_numerator": list(self.zeta_numerator)}

    def base_change(self, m: int) -> "WeilDatum":
        """The datum of the same curve over ``F_{q^m}``: ``prod_i (1 - lambda_i^m T)``."""
        if m < 1:
            raise ValueError("base change degree must be >= 1")
        # Coefficients of prod (1 - lambda^m T) from power sums via Newton's identities.
        s = power_sums(self, 2 * self.g * m)
        sm = [s[m * k] for k in range(2 * self.g + 1)]
        e = [Fraction(1)]
        for k in range(1, 2 * self.g + 1):
            acc = sum((-1) ** (i - 1) * e[k - i] * sm[i] for i in range(1, k + 1))
            e.append(acc / k)
        coeffs = [(-1) ** k * e[k] for k in range(2 * self.g + 1)]
        if any(c.denominator != 1 for c in coeffs):
            raise ArithmeticError("base change produced non-integer coefficients")
        return WeilDatum(self.q**m, self.g, tuple(int(c) for c in coeffs))


def power_sums(w: WeilDatum, upto: int) -> list[int]:
    """``s_k = sum_i lambda_i^k`` for ``k = 0..upto`` (exact, from Newton's identities)."""
    a = w.zeta_numerator
    n = 2 * w.g
    # P(T) = prod (1 - lambda_i T) so the elementary symmetric functions are (-1)^k a_k.
    e = [(-1) ** k * a[k] for k in range(n + 1)]
    s = [n]
    for k in range(1, upto + 1):
        acc = (-1) ** (k - 1) * k * e[k] if k <= n else 0
        for i in range(1, min(k, n + 1)):
            acc += (-1) ** (i - 1) * e[i] * s[k - i]
        s.append(acc)
    return s


@dataclass(frozen=True)
class ValidatedWeil:
    datum: WeilDatum
    eigenvalues: tuple  # lambda_1..lambda_g, one per pair {lambda, q/lambda}
    bits: int

    @property
    def q(self):
        return self.datum.q

    @property
    def g(self):
        return self.datum.g

    def all_eigenvalues(self):
        return list(self.eigenvalues) + [self.q / lam for lam in self.eigenvalues]

    def jacobian_order(self, m: int) -> int:
        """``|J(F_{q^m})| = P_m(1)``, exactly."""
        return sum(self.datum.base_change(m).zeta_numerator) if self.g else 1


def check_functional_equation(w: WeilDatum) -> None:
    a = w.zeta_numerator
    if len(a) != 2 * w.g + 1:
        raise FunctionalEquationViolated(
            f"zeta numerator of genus {w.g} needs {2 * w.g + 1} coefficients, got {len(a)}"
        )
    if a[0] != 1:
        raise FunctionalEquationViolated(f"a_0 must be 1, got {a[0]}")
    for i in range(w.g + 1):
        if a[2 * w.g - i] != w.q ** (w.g - i) * a[i]:
            raise FunctionalEquationViolated(
                f"a_{2 * w.g - i} = {a[2 * w.g - i]} but q^{w.g - i} a_{i} = {w.q ** (w.g - i) * a[i]}"
            )


def pair_eigenvalues(values, q, ctx, tol) -> list:
    """Choose one member of each ``{lambda, q/lambda}`` pair, preferring Im >= 0."""
    upper = sorted((v for v in values if v.imag > tol), key=lambda v: (-v.imag, v.real))
    real = sorted((v for v in values if abs(v.imag) <= tol), key=lambda v: v.real)
    lower = [v for v in values if v.imag < -tol]
    if len(upper) != len(lower) or len(real) % 2:
        raise RootModulusViolated("eigenvalues are not closed under lambda -> q/lambda")
    chosen = list(upper)
    for i in range(0, len(real), 2):
        a, b = real[i], real[i + 1]
        if abs(a * b - q) > tol * q:
            raise RootModulusViolated("real eigenvalues do not pair up as lambda, q/lambda")
        chosen.append(a)
    return chosen


def _roots(coeffs, ctx, bits):
    """Inverse roots of ``sum a_i T^i`` (i.e. roots of the reversed polynomial)."""
    if len(coeffs) == 1:
        return []
    # prod (1 - lambda T) reversed is prod (X - lambda).
    return ctx.polyroots(list(coeffs), maxsteps=200 + 4 * len(coeffs), extraprec=2 * bits)


def validate_weil(w: WeilDatum, prec: EvalPrecision = DEFAULT_PRECISION) -> ValidatedWeil:
    if not is_prime_power(w.q):
        raise CountingError(f"q={w.q} is not a prime power")
    if w.g < 0:
        raise CountingError(f"genus must be nonnegative, got {w.g}")
    check_functional_equation(w)
    ctx = prec.context()
    lams = [ctx.mpc(v) for v in _roots(w.zeta_numerator, ctx, prec.bits)]
    tol = ctx.mpf(2) ** (-(prec.bits // 4))
    sq = ctx.sqrt(w.q)
    for lam in lams:
        if abs(abs(lam) - sq) > tol * sq:
            raise RootModulusViolated(
                f"eigenvalue {ctx.nstr(lam, 10)} has modulus {ctx.nstr(abs(lam), 10)}, expected sqrt({w.q})"
            )
    return ValidatedWeil(w, tuple(pair_eigenvalues(lams, w.q, ctx, tol)), prec.bits)


# --- rounding ----------------------------------------------------------------


@dataclass(frozen=True)
class CountResult:
    value: int
    residual: float
    raw: complex = field(compare=False, default=0j)

    def __int__(self):
        return self.value


def round_count(value, prec: EvalPrecision, what: str) -> CountResult:
    if isinstance(value, (int, Fraction)):
        value = Fraction(value)
        if value.denominator != 1:
            raise IntegralityFailed(f"{what}: exact value {value} is not an integer", value, None)
        return CountResult(int(value), 0.0, complex(value))
    re = value.real
    rounded = int(mpmath.nint(re))
    residual = float(abs(value - rounded))
    if residual >= prec.integrality_tolerance:
        raise IntegralityFailed(
            f"{what}: value {complex(value)} is {residual:.3g} away from an integer "
            f"(tolerance {prec.integrality_tolerance:.3g}); retry with more bits",
            complex(value),
            residual,
        )
    return CountResult(rounded, residual, complex(value))


# --- count of M ---------------------------------------------------------------


def _check_count_args(w: WeilDatum, n, e, degD, m):
    if n < 1:
        raise CountingError(f"rank must be >= 1, got {n}")
    if gcd(e, n) != 1:
        raise CountingError(f"e={e} and n={n} must be coprime")
    if degD <= 2 * w.g - 2:
        raise CountingError(f"need degD > 2g-2 = {2 * w.g - 2}, got {degD}")
    if m < 1:
        raise CountingError(f"m must be >= 1, got {m}")


def _symmetric_g1_value(poly, lam_trace: int, Q: int) -> Fraction:
    """Exact value of a genus-one polynomial symmetric under ``x -> z/x``.

    With ``s_k = L^k + (Q/L)^k`` (so ``s_1`` is the trace), each monomial
    ``c x^k z^j`` contributes ``c Q^j s_k / 2`` after averaging over the flip.
    """
    lo, hi = poly.degree_range("x1")
    top = max(abs(lo), abs(hi))
    s = [2, lam_trace]
    for _ in range(2, top + 1):
        s.append(lam_trace * s[-1] - Q * s[-2])
    total = Fraction(0)
    for (k, j), c in poly.terms.items():
        sk = s[k] if k >= 0 else Fraction(s[-k], Q ** (-k))
        total += c * Fraction(Q) ** j * sk
    return total / 2


def count_M_exact_g1(w: WeilDatum, n: int, e: int, degD: int, m: int = 1) -> int:
    """Integer path for genus one via the power-sum recurrence."""
    if w.g != 1:
        raise CountingError("the exact path is only for genus one")
    check_functional_equation(w)
    _check_count_args(w, n, e, degD, m)
    poly = universal_h(1, n, degD).poly
    trace = power_sums(w, m)[m]
    value = _symmetric_g1_value(poly, trace, w.q**m)
    if value.denominator != 1:
        raise IntegralityFailed(f"exact genus-one value {value} is not an integer", value, 0)
    return int(value)


def evaluate_at(poly, xs, zval):
    values = {f"x{i}": x for i, x in enumerate(xs, start=1)}
    values["z"] = zval
    return poly.evaluate(values)


def count_M_detail(
    w: WeilDatum, n: int, e: int, degD: int, m: int = 1, prec: EvalPrecision = DEFAULT_PRECISION
) -> CountResult:
    _check_count_args(w, n, e, degD, m)
    vw = validate_weil(w, prec)
    ctx = prec.context()
    poly = universal_h(w.g, n, degD - (2 * w.g - 2)).poly
    xs = [ctx.mpc(lam) ** m for lam in vw.eigenvalues]
    value = evaluate_at(poly, xs, ctx.mpf(w.q) ** m)
    return round_count(ctx.mpc(value), prec, f"|M_{n}^{e}| over F_{w.q}^{m}")


def count_M(w: WeilDatum, n: int, e: int, degD: int, m: int = 1, prec: EvalPrecision = DEFAULT_PRECISION) -> int:
    """``|M_n^e(F_{q^m})|``: the universal polynomial at ``x_i = lambda_i^m``, ``z = q^m``."""
    return count_M_detail(w, n, e, degD, m, prec).value


# --- cover data ----------------------------------------------------------------


@dataclass(frozen=True)
class CharacterOrbit:
    """Characters sharing order ``d``, unit ``exp(2 pi i unit_exponent)`` and eigenvalue blocks.

    ``eigen_blocks[i]`` for ``i = 0..floor(d/2)`` are zeta-like numerators whose
    inverse roots are the Frobenius eigenvalues on the ``chi^i`` part. Blocks
    with ``d/2 < i < d`` are the duals ``q/mu`` of block ``d - i`` and are not stored.
    """

    d: int
    multiplicity: int
    unit_exponent: Fraction
    eigen_blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def from_json_obj(cls, obj) -> "CharacterOrbit":
        try:
            return cls(
                int(obj["d"]),
                int(obj["multiplicity"]),
                Fraction(str(obj.get("unit_exponent", "0"))) % 1,
                tuple(tuple(int(a) for a in b) for b in obj["eigen_blocks"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CoverInconsistent(f"malformed character orbit: {exc}") from exc

    def to_json_obj(self) -> dict:
        return {
            "d": self.d,
            "multiplicity": self.multiplicity,
            "unit_exponent": str(self.unit_exponent),
            "eigen_blocks": [list(b) for b in self.eigen_blocks],
        }

    def unit(self, ctx):
        return ctx.expjpi(2 * ctx.mpf(self.unit_exponent.numerator) / self.unit_exponent.denominator)


@dataclass(frozen=True)
class CoverDatum:
    orbits: tuple[CharacterOrbit, ...]

    @classmethod
    def from_json_obj(cls, obj) -> "CoverDatum":
        if not isinstance(obj, dict) or "orbits" not in obj:
            raise CoverInconsistent("cover datum must be an object with an 'orbits' list")
        return cls(tuple(CharacterOrbit.from_json_obj(o) for o in obj["orbits"]))

    @classmethod
    def load(cls, path) -> "CoverDatum":
        return cls.from_json_obj(json.loads(Path(path).read_text()))

    def to_json_obj(self) -> dict:
        return {"orbits": [o.to_json_obj() for o in self.orbits]}


def validate_cover(w: WeilDatum, cover: CoverDatum, n: int) -> None:
    if w.g < 1:
        raise CoverInconsistent("cover data need a base curve of genus >= 1")
    total = sum(o.multiplicity for o in cover.orbits)
    if total != n ** (2 * w.g):
        raise CoverInconsistent(f"multiplicities sum to {total}, expected n^(2g) = {n ** (2 * w.g)}")
    for o in cover.orbits:
        if o.d < 1 or n % o.d:
            raise CoverInconsistent(f"orbit order d={o.d} does not divide n={n}")
        if o.multiplicity < 1:
            raise CoverInconsistent("orbit multiplicities must be positive")
        if len(o.eigen_blocks) != o.d // 2 + 1:
            raise CoverInconsistent(
                f"orbit of order {o.d} needs {o.d // 2 + 1} blocks, got {len(o.eigen_blocks)}"
            )
        if tuple(o.eigen_blocks[0]) != w.zeta_numerator:
            raise CoverInconsistent("block 0 must equal the base curve's zeta numerator")
        for i, b in enumerate(o.eigen_blocks[1:], start=1):
            if len(b) != 2 * w.g - 1 or b[0] != 1:
                raise CoverInconsistent(
                    f"block {i} of an order-{o.d} orbit must have degree 2g-2 = {2 * w.g - 2} and constant term 1"
                )
        if (o.unit_exponent * o.d) % 1:
            raise CoverInconsistent(f"unit exponent {o.unit_exponent} is not in (1/{o.d})Z")
        if o.d % 2 and o.unit_exponent:
            warnings.warn(
                f"orbit of odd order {o.d} has unit exp(2 pi i {o.unit_exponent}) != 1",
                stacklevel=3,
            )


def cover_weil_datum(w: WeilDatum, orbit: CharacterOrbit) -> WeilDatum:
    """The cover curve's datum: the product of all blocks, duals included."""
    from .scalars import _poly_mul

    prod = list(w.zeta_numerator)
    q = w.q
    for i in range(1, orbit.d):
        j = min(i, orbit.d - i)
        block = orbit.eigen_blocks[j]
        if i > orbit.d - i:
            block = _dual_block(block, q)
        prod = _poly_mul(prod, list(block))
    gc = cover_genus(w.g, orbit.d)
    prod = prod + [0] * (2 * gc + 1 - len(prod))
    return WeilDatum(q, gc, tuple(prod))


def _dual_block(block, q):
    """Numerator with inverse roots ``q/mu`` from one with inverse roots ``mu``."""
    k = len(block) - 1
    top = block[k]
    if top == 0:
        raise CoverInconsistent("a block has a vanishing leading coefficient")
    # prod (1 - (q/mu) T) = prod(-q/mu)... = T^k P(q/T)... scaled so the constant term is 1.
    rev = [Fraction(block[k - i] * q**i, top) for i in range(k + 1)]
    if any(c.denominator != 1 for c in rev):
        raise CoverInconsistent("a dual block has non-integer coefficients")
    return [int(c) for c in rev]


def orbit_variables(vw: ValidatedWeil, orbit: CharacterOrbit, prec: EvalPrecision, ctx) -> list:
    """Values of ``x_1..x_{g'}`` at one character: base eigenvalues then the weight blocks."""
    g, q, d = vw.g, vw.q, orbit.d
    xs = [ctx.mpc(lam) for lam in vw.eigenvalues]
    tol = ctx.mpf(2) ** (-(prec.bits // 4))
    by_weight: dict[int, list] = {}
    for i in range(1, d // 2 + 1):
        block = orbit.eigen_blocks[i]
        mus = [ctx.mpc(v) for v in _roots(block, ctx, prec.bits)]
        sq = ctx.sqrt(q)
        for mu in mus:
            if abs(abs(mu) - sq) > tol * sq:
                raise RootModulusViolated(f"cover eigenvalue {ctx.nstr(mu, 10)} is not of modulus sqrt(q)")
        mus.sort(key=lambda v: (-v.imag, v.real))
        if 2 * i == d:
            by_weight[i] = pair_eigenvalues(mus, q, ctx, tol)
        else:
            by_weight[i] = mus[: g - 1]
            by_weight[d - i] = [q / mu for mu in mus[g - 1 :]]
    for wgt in range(1, d):
        vals = by_weight[wgt]
        if len(vals) != g - 1:
            raise CoverInconsistent(f"weight-{wgt} block has {len(vals)} values, expected {g - 1}")
        xs.extend(vals)
    return xs


def _orbit_prefactor(orbit: CharacterOrbit, n: int, degD: int, q: int, m: int, ctx):
    nc = n // orbit.d
    r = nc * nc * orbit.d * (orbit.d - 1) // 2
    return (ctx.mpf(q) ** (r * degD) * orbit.unit(ctx)) ** m


def _twisted_sum(w, cover, n, e, degD, m, prec, tilde: bool):
    _check_count_args(w, n, e, degD, m)
    validate_cover(w, cover, n)
    vw = validate_weil(w, prec)
    ctx = prec.context()
    p = degD - (2 * w.g - 2)
    et = e + n * (n - 1) * degD // 2
    total = ctx.mpc(0)
    for orbit in cover.orbits:
        d = orbit.d
        poly = twisted_h_tilde(w.g, n, p, d, et) if tilde else twisted_h(w.g, n, p, d, et).poly
        xs = [x**m for x in orbit_variables(vw, orbit, prec, ctx)]
        value = evaluate_at(poly, xs, ctx.mpf(w.q) ** m)
        total += orbit.multiplicity * _orbit_prefactor(orbit, n, degD, w.q, m, ctx) * value
    return total, vw, ctx


def count_N_trace0_detail(w, cover, n, e, degD, m=1, prec=DEFAULT_PRECISION) -> CountResult:
    total, _, _ = _twisted_sum(w, cover, n, e, degD, m, prec, tilde=True)
    return round_count(total, prec, f"|N_{n}^beta| over F_{w.q}^{m}")


def count_N_trace0(w, cover, n, e, degD, m=1, prec=DEFAULT_PRECISION) -> int:
    """``|N_n^beta(F_{q^m})|`` from the twisted quotient polynomials."""
    return count_N_trace0_detail(w, cover, n, e, degD, m, prec).value


def count_M_fixed_det_detail(w, cover, n, e, degD, m=1, prec=DEFAULT_PRECISION) -> CountResult:
    total, vw, ctx = _twisted_sum(w, cover, n, e, degD, m, prec, tilde=False)
    return round_count(total / vw.jacobian_order(m), prec, f"|M_{n}^beta| over F_{w.q}^{m}")


def count_M_fixed_det(w, cover, n, e, degD, m=1, prec=DEFAULT_PRECISION) -> int:
    """``|M_n^beta(F_{q^m})|``: the twisted polynomials averaged over characters, over ``|J|``."""
    return count_M_fixed_det_detail(w, cover, n, e, degD, m, prec).value


@dataclass(frozen=True)
class ComparisonReport:
    lhs: CountResult
    rhs: complex
    difference: float
    tolerance: float
    per_orbit: list

    @property
    def ok(self) -> bool:
        return self.difference < self.tolerance


def verify_comparison(w, cover, n, e, degD, m=1, prec=DEFAULT_PRECISION) -> ComparisonReport:
    """Compare the fixed-determinant count with the sum of counts on the covers.

    The right side evaluates, for every orbit, the full universal polynomial of
    the cover at the cover's eigenvalues twisted by each ``zeta`` in ``mu_d``
    (``zeta = 1`` is literally ``count_M`` of the cover curve), averages against
    ``zeta^e~`` and weights by ``q^(m r degD) unit^m / |J|``.
    """
    lhs = count_M_fixed_det_detail(w, cover, n, e, degD, m, prec)
    validate_cover(w, cover, n)
    vw = validate_weil(w, prec)
    ctx = prec.context()
    p = degD - (2 * w.g - 2)
    et = e + n * (n - 1) * degD // 2
    rhs = ctx.mpc(0)
    per_orbit = []
    for orbit in cover.orbits:
        d = orbit.d
        nc = n // d
        cw = cover_weil_datum(w, orbit)
        validate_weil(cw, prec)
        weights = block_weights(w.g, d)
        poly = universal_h(cw.g, nc, d * p).poly
        xs = orbit_variables(vw, orbit, prec, ctx)
        avg = ctx.mpc(0)
        for k in range(d):
            zeta = ctx.expjpi(ctx.mpf(2 * k) / d)
            twisted = [x**m * zeta**wt for x, wt in zip(xs, weights)]
            value = evaluate_at(poly, twisted, ctx.mpf(w.q) ** m)
            if k == 0 and gcd(e, nc) == 1 and degD * d > 2 * cw.g - 2:
                direct = count_M(cw, nc, e, d * degD, m, prec)
                if abs(value - direct) > prec.integrality_tolerance:
                    raise CoverInconsistent(
                        f"cover count {direct} differs from the twisted evaluation {complex(value)}"
                    )
            avg += zeta**et * value
        avg /= d
        term = orbit.multiplicity * _orbit_prefactor(orbit, n, degD, w.q, m, ctx) * avg
        per_orbit.append({"d": d, "multiplicity": orbit.multiplicity, "term": complex(term)})
        rhs += term
    rhs /= vw.jacobian_order(m)
    diff = float(abs(rhs - lhs.raw))
    return ComparisonReport(lhs, complex(rhs), diff, prec.integrality_tolerance, per_orbit)
