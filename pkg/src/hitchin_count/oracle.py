"""Brute-force counts of stable Hitchin pairs on the projective line over a prime field.

Sections of ``O(k)`` are binary forms of degree ``k``, stored dehomogenized as
coefficient tuples ``(c_0, ..., c_k)`` of ``c_0 + c_1 x + ... + c_k x^k``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .scalars import divisors


class BudgetExceeded(RuntimeError):
    """The enumeration would exceed the configured work budget."""


DEFAULT_BUDGET = 2_000_000


def _check_prime(q: int) -> None:
    if q < 2 or any(d not in (1, q) for d in divisors(q)):
        raise ValueError(f"the oracle works over prime fields only, got q={q}")


def sections(q: int, k: int):
    """All elements of ``H^0(P^1, O(k))`` over ``F_q`` (only the zero form for ``k < 0``)."""
    if k < 0:
        return [()]
    return list(itertools.product(range(q), repeat=k + 1))


def section_count(q: int, k: int) -> int:
    return q ** (k + 1) if k >= 0 else 1


def count_p1_rank1(q: int, e: int, degD: int, m: int = 1) -> int:
    """Pairs ``(O(e), theta)`` with ``theta`` a section of ``O(D)``: ``q^(m(degD+1))``."""
    if degD < -1:
        raise ValueError(f"need degD >= -1, got {degD}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return q ** (m * (degD + 1))


# --- polynomials over F_q ---------------------------------------------------------


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _mul(a, b, q):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % q
    return out


def _sub(a, b, q):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % q for x, y in zip(a, b)])


def _add(a, b, q):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x + y) % q for x, y in zip(a, b)])


def poly_gcd(a, b, q):
    """Monic gcd of two polynomials over ``F_q`` (``[]`` is zero)."""
    a, b = _trim(a), _trim(b)
    while b:
        inv = pow(b[-1], q - 2, q)
        while len(a) >= len(b):
            c = a[-1] * inv % q
            shift = len(a) - len(b)
            for i, y in enumerate(b):
                a[shift + i] = (a[shift + i] - c * y) % q
            a = _trim(a)
        a, b = b, a
    if a:
        inv = pow(a[-1], q - 2, q)
        a = [x * inv % q for x in a]
    return a


def forms_coprime(f, kf: int, g, kg: int, q: int) -> bool:
    """Whether binary forms ``f`` of degree ``kf`` and ``g`` of degree ``kg`` share no zero on P^1."""
    f, g = _trim(f), _trim(g)
    if not f and not g:
        return False
    if not g:
        return kf == 0 and len(f) == 1
    if not f:
        return kg == 0 and len(g) == 1
    if len(poly_gcd(f, g, q)) > 1:
        return False
    # A common zero at infinity means both forms drop degree.
    return len(f) - 1 == kf or len(g) - 1 == kg


def line_subbundles(q: int, a: int, b: int, c: int):
    """Embeddings ``O(c) -> O(a) + O(b)`` up to scalars, as coprime form pairs."""
    out = []
    for f in sections(q, a - c):
        for g in sections(q, b - c):
            first = next((x for x in f + g if x), 0)
            if first != 1:
                continue
            if forms_coprime(f, a - c, g, b - c, q):
                out.append((tuple(f), tuple(g)))
    return out


def _invariant(theta, sub, q) -> bool:
    """``theta(L) within L(D)``: ``(t11 f + t12 g) g - (t21 f + t22 g) f == 0``."""
    t11, t12, t21, t22 = theta
    f, g = sub
    top = _add(_mul(t11, f, q), _mul(t12, g, q), q)
    bot = _add(_mul(t21, f, q), _mul(t22, g, q), q)
    return not _sub(_mul(top, g, q), _mul(bot, f, q), q)


def aut_order(q: int, a: int, b: int) -> int:
    """``|Aut(O(a) + O(b))|`` over ``F_q``."""
    if a == b:
        return (q * q - 1) * (q * q - q)
    hi, lo = max(a, b), min(a, b)
    return (q - 1) ** 2 * section_count(q, hi - lo)


@dataclass(frozen=True)
class P1Rank2Result:
    q: int
    e: int
    degD: int
    total: int
    breakdown: list = field(default_factory=list)


def count_p1_rank2_detail(q: int, e: int, degD: int, budget: int = DEFAULT_BUDGET) -> P1Rank2Result:
    _check_prime(q)
    if e % 2 == 0:
        raise ValueError(f"rank 2 needs odd degree e, got {e}")
    if degD < -1:
        raise ValueError(f"need degD >= -1, got {degD}")
    a_min = (e + 1) // 2
    a_max = (e + degD) // 2
    types = list(range(a_min, a_max + 2))  # one past the bound as a sanity check
    work = 0
    for a in types:
        b = e - a
        dims = [degD, a - b + degD, b - a + degD, degD]
        work += math.prod(section_count(q, k) for k in dims)
    if work > budget:
        raise BudgetExceeded(
            f"P^1 oracle instance (q={q}, e={e}, degD={degD}) needs {work} matrices, budget {budget}"
        )
    total = Fraction(0)
    breakdown = []
    for a in types:
        b = e - a
        subs = [s for c in range((e + 1) // 2, a + 1) for s in line_subbundles(q, a, b, c)]
        spaces = [
            [_trim(s) for s in sections(q, k)]
            for k in (degD, a - b + degD, b - a + degD, degD)
        ]
        n_theta = 0
        stable = 0
        for theta in itertools.product(*spaces):
            n_theta += 1
            if not any(_invariant(theta, s, q) for s in subs):
                stable += 1
        if a > a_max and stable:
            raise AssertionError(f"splitting type O({a})+O({b}) beyond the bound has stable pairs")
        aut = aut_order(q, a, b)
        weight = Fraction(stable * (q - 1), aut)
        total += weight
        breakdown.append({"a": a, "b": b, "theta": n_theta, "stable": stable, "aut": aut, "weighted": weight})
    if total.denominator != 1:
        raise AssertionError(f"weighted count {total} is not an integer")
    return P1Rank2Result(q, e, degD, int(total), breakdown)


def count_p1_rank2(q: int, e: int, degD: int, budget: int = DEFAULT_BUDGET) -> int:
    """Stable rank-2 Hitchin pairs of degree ``e`` on P^1 with twist ``O(degD)``, weighted by automorphisms."""
    return count_p1_rank2_detail(q, e, degD, budget).total
