"""Cyclotomic averages of the universal polynomials and their specializations.

For ``n = n' d`` and ``g' = d(g - 1) + 1`` the roots of unity ``mu_d`` act on
``H_{g',n',dp}`` by scaling the variable blocks; averaging against
``zeta^e`` gives the twisted polynomial ``H_{g,n,p,d,e}``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .polyalg import LaurentPoly, NotDivisible, exact_divide
from .scalars import Cyclotomic, moebius, roots_of_unity
from .universal import InvariantViolation, boundary_factor, h_vars, universal_h


def cover_genus(g: int, d: int) -> int:
    return d * (g - 1) + 1


def block_weights(g: int, d: int) -> tuple[int, ...]:
    """mu_d-weight of each variable ``x_1..x_{g'}``.

    Weight 0 for ``j <= g``; weight ``i`` for ``i(g-1)+2 <= j <= (i+1)(g-1)+1``.
    """
    if g < 1 or d < 1:
        raise ValueError(f"block weights need g >= 1 and d >= 1, got g={g}, d={d}")
    weights = [0] * g
    for i in range(1, d):
        weights += [i] * (g - 1)
    return tuple(weights)


def _check_args(g, n, p, d):
    if g < 1:
        raise ValueError(f"twisted polynomials need g >= 1, got {g}")
    if d < 1 or n % d:
        raise ValueError(f"d={d} must be a positive divisor of n={n}")


@dataclass(frozen=True)
class TwistedPoly:
    g: int
    n: int
    p: int
    d: int
    e_mod_d: int
    poly: LaurentPoly


def twisted_h(g: int, n: int, p: int, d: int, e: int) -> TwistedPoly:
    """Keep the monomials of ``H_{g',n',dp}`` whose block weight ``w`` has ``d | e + w``.

    This is the average ``(1/d) sum_zeta zeta^e (zeta . H)`` computed without
    roots of unity.
    """
    _check_args(g, n, p, d)
    base = universal_h(cover_genus(g, d), n // d, d * p).poly
    weights = block_weights(g, d) + (0,)
    e_mod = e % d
    kept = {}
    for exp, c in base.terms.items():
        w = sum(a * b for a, b in zip(weights, exp))
        if (e_mod + w) % d == 0:
            kept[exp] = c
    return TwistedPoly(g, n, p, d, e_mod, LaurentPoly(base.vars, kept))


def twisted_h_average(g: int, n: int, p: int, d: int, e: int) -> LaurentPoly:
    """The same average computed literally with cyclotomic scalars (test path)."""
    _check_args(g, n, p, d)
    base = universal_h(cover_genus(g, d), n // d, d * p).poly
    weights = block_weights(g, d)
    vars = base.vars
    total = LaurentPoly.zero(vars)
    for zeta in roots_of_unity(d):
        image = base.substitute(
            {
                f"x{j}": LaurentPoly.monomial(vars, {f"x{j}": 1}, zeta**w)
                for j, w in enumerate(weights, start=1)
                if w
            },
            vars,
        )
        total = total + image.scale(zeta**e)
    return _rationalize(total / d)


def _rationalize(p: LaurentPoly) -> LaurentPoly:
    out = {}
    for e, c in p.terms.items():
        if isinstance(c, Cyclotomic):
            c = c.to_rational()
        out[e] = c.numerator if getattr(c, "denominator", 1) == 1 else c
    return LaurentPoly(p.vars, out)


def tilde_divisor(g: int, p: int, vars) -> LaurentPoly:
    """``z^(p+g-1) prod_{i <= g} (1 - x_i)(1 - z / x_i)`` in the given variables."""
    div = boundary_factor(g, vars)
    shift = tuple(p + g - 1 if v == "z" else 0 for v in vars)
    return div.shift(shift)


def twisted_h_tilde(g: int, n: int, p: int, d: int, e: int) -> LaurentPoly:
    tw = twisted_h(g, n, p, d, e).poly
    try:
        quotient = exact_divide(tw, tilde_divisor(g, p, tw.vars))
    except NotDivisible as exc:
        raise InvariantViolation(
            f"twisted H_{{{g},{n},{p},{d},{e % d}}} is not divisible by its boundary factor"
        ) from exc
    if not quotient.has_integer_coefficients():
        raise InvariantViolation("the quotient polynomial has non-integer coefficients")
    if p >= 1 and quotient and quotient.min_exponents()[-1] < 0:
        raise InvariantViolation("the quotient polynomial has negative powers of z")
    return quotient.with_integer_coefficients()


FLAT_VARS = ("xi", "u")


def flat_h(g: int, n: int, p: int, d: int) -> LaurentPoly:
    """``H_{g',n',dp}`` at ``z = u^2``, ``x_j = xi^w(j) u``; a polynomial in ``xi^{+-1}, u``."""
    _check_args(g, n, p, d)
    base = universal_h(cover_genus(g, d), n // d, d * p).poly
    weights = block_weights(g, d)
    mapping = {
        f"x{j}": LaurentPoly.monomial(FLAT_VARS, {"xi": w, "u": 1})
        for j, w in enumerate(weights, start=1)
    }
    mapping["z"] = LaurentPoly.monomial(FLAT_VARS, {"u": 2})
    return base.substitute(mapping, FLAT_VARS)


def flat_h_tilde(g: int, n: int, p: int, d: int, e: int) -> LaurentPoly:
    """The quotient polynomial at ``z = u^2`` and every ``x_j = u``; a polynomial in ``u``."""
    q = twisted_h_tilde(g, n, p, d, e)
    mapping = {v: LaurentPoly.var(("u",), "u") for v in q.vars if v != "z"}
    mapping["z"] = LaurentPoly.monomial(("u",), {"u": 2})
    out = q.substitute(mapping, ("u",))
    if p >= 1 and out and out.min_exponents()[0] < 0:
        raise InvariantViolation("specialized quotient has negative powers of u")
    return out


def specialize_xi(p: LaurentPoly, zeta) -> LaurentPoly:
    """Substitute a scalar for ``xi`` in a polynomial over ``(xi, u)``."""
    return p.substitute({"xi": zeta, "u": LaurentPoly.var(("u",), "u")}, ("u",))


def key_identity_sides(g: int, n: int, p: int, d: int, e: int) -> tuple[LaurentPoly, LaurentPoly]:
    """Both sides of ``(1/d) sum_zeta zeta^e Hflat(zeta, u) = u^(2(p+g-1)) (1-u)^(2g) Htilde_flat(u)``.

    Coefficients are order-``d`` cyclotomic numbers on the left.
    """
    flat = flat_h(g, n, p, d)
    lhs = LaurentPoly.zero(("u",))
    for zeta in roots_of_unity(d):
        lhs = lhs + specialize_xi(flat, zeta).scale(zeta**e)
    lhs = lhs / d
    u = ("u",)
    one_minus_u = LaurentPoly.constant(u, 1) - LaurentPoly.var(u, "u")
    rhs = (one_minus_u ** (2 * g)).shift((2 * (p + g - 1),)) * flat_h_tilde(g, n, p, d, e)
    return lhs, rhs


def flat_value_at_one(g: int, n: int, p: int, d: int, zeta: Cyclotomic) -> Cyclotomic:
    """Value at ``u = 1`` of ``Hflat(zeta, u) / (1 - u)^(2g)``."""
    flat = flat_h(g, n, p, d)
    one_minus_u = LaurentPoly.constant(FLAT_VARS, 1) - LaurentPoly.var(FLAT_VARS, "u")
    try:
        q = exact_divide(flat, one_minus_u ** (2 * g))
    except NotDivisible as exc:
        raise InvariantViolation(
            f"flat H for (g,n,p,d)={(g, n, p, d)} is not divisible by (1-u)^{2 * g}"
        ) from exc
    total = Cyclotomic.constant(zeta.order, 0)
    for (k, _), c in q.terms.items():
        total = total + c * zeta**k
    return total


def flat_value_closed_form(g: int, n: int, p: int, d: int, zeta: Cyclotomic) -> Cyclotomic:
    """Closed form of :func:`flat_value_at_one`."""
    _check_args(g, n, p, d)
    n1 = n // d
    if g >= 2:
        sign = -1 if (p * (n - d)) % 2 else 1
        value = Cyclotomic.constant(zeta.order, sign * moebius(n1) * n1 ** (2 * g - 3))
        for i in range(1, d):
            value = value * ((1 - zeta ** (i * n1)) * (1 - zeta ** (-i * n1))) ** (g - 1)
        return value
    if (p * d) % 2 and n1 % 4 == 2:
        return Cyclotomic.constant(zeta.order, 2)
    return Cyclotomic.constant(zeta.order, 1)


def tilde_vars(g: int, d: int) -> tuple[str, ...]:
    return h_vars(cover_genus(g, d))
