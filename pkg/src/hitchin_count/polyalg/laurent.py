"""Sparse multivariate Laurent polynomials over exact coefficient rings."""

from __future__ import annotations

import heapq
import json
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping

from ..scalars import Cyclotomic


class NotDivisible(ArithmeticError):
    """Raised by :func:`exact_divide` when the division leaves a remainder."""

    def __init__(self, message: str, remainder: "LaurentPoly | None" = None):
        super().__init__(message)
        self.remainder = remainder


def _div_scalar(a, b):
    if isinstance(a, int) and isinstance(b, int):
        if a % b == 0:
            return a // b
        return Fraction(a, b)
    if isinstance(b, int) and not isinstance(a, Cyclotomic):
        return Fraction(a) / b
    return a / b


def _add_exp(e1, e2):
    return tuple([a + b for a, b in zip(e1, e2)])


class LaurentPoly:
    """Laurent polynomial in the ordered variables ``vars``.

    ``terms`` maps exponent tuples (entries may be negative) to nonzero
    coefficients (``int``, ``Fraction`` or :class:`Cyclotomic`).  Treat
    instances as immutable.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Iterable[str], terms: Mapping | None = None):
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        n = len(self.vars)
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(k) for k in e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match variables {self.vars}")
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, vars: tuple, terms: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        obj._hash = None
        return obj

    # --- constructors --------------------------------------------------

    @classmethod
    def zero(cls, vars) -> "LaurentPoly":
        return cls._raw(tuple(vars), {})

    @classmethod
    def constant(cls, vars, c) -> "LaurentPoly":
        vars = tuple(vars)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def monomial(cls, vars, exps: Mapping[str, int] | Iterable[int], c=1) -> "LaurentPoly":
        vars = tuple(vars)
        if isinstance(exps, Mapping):
            unknown = set(exps) - set(vars)
            if unknown:
                raise KeyError(f"unknown variables {sorted(unknown)}")
            e = tuple(int(exps.get(v, 0)) for v in vars)
        else:
            e = tuple(int(k) for k in exps)
        return cls(vars, {e: c})

    @classmethod
    def var(cls, vars, name: str) -> "LaurentPoly":
        return cls.monomial(vars, {name: 1})

    # --- basic protocol ------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            if other.vars != self.vars:
                return False
            return self.terms == other.terms
        if isinstance(other, (int, _RationalABC, Cyclotomic)):
            if not other:
                return not self.terms
            return self.terms == {(0,) * len(self.vars): other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def _check(self, other: "LaurentPoly"):
        if other.vars != self.vars:
            raise ValueError(f"variable sets differ: {self.vars} vs {other.vars}")

    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, (int, _RationalABC, Cyclotomic)):
            return LaurentPoly.constant(self.vars, other)
        return NotImplemented

    # --- ring operations -----------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for e, c in small.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) - c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.vars, out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, _RationalABC, Cyclotomic)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (eb, cb), = b.items()
            return self._raw(self.vars, {_add_exp(e, eb): c * cb for e, c in a.items()})
        out: dict = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple([x + y for x, y in zip(ea, eb)])
                out[e] = get(e, 0) + ca * cb
        return LaurentPoly._raw(self.vars, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (int, _RationalABC, Cyclotomic)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "LaurentPoly":
        if not c:
            return LaurentPoly.zero(self.vars)
        return LaurentPoly._raw(self.vars, {e: v * c for e, v in self.terms.items() if v * c})

    def __truediv__(self, other):
        if isinstance(other, (int, _RationalABC, Cyclotomic)):
            return LaurentPoly._raw(
                self.vars, {e: _div_scalar(c, other) for e, c in self.terms.items()}
            )
        if isinstance(other, LaurentPoly):
            return exact_divide(self, other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("negative powers only exist for monomials")
            (e, c), = self.terms.items()
            return LaurentPoly._raw(
                self.vars, {tuple(x * k for x in e): _div_scalar(1, c) ** (-k)}
            )
        result = LaurentPoly.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, exps: tuple, c=1) -> "LaurentPoly":
        """Multiply by the monomial ``c * X**exps``."""
        return LaurentPoly._raw(
            self.vars, {_add_exp(e, exps): v * c for e, v in self.terms.items()}
        )

    def mul_binomial(self, m: tuple) -> "LaurentPoly":
        """Multiply by ``1 - X**m``."""
        out = dict(self.terms)
        for e, c in self.terms.items():
            key = _add_exp(e, m)
            v = out.get(key, 0) - c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return LaurentPoly._raw(self.vars, out)

    # --- structure -----------------------------------------------------

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def min_exponents(self) -> tuple:
        if not self.terms:
            return (0,) * len(self.vars)
        return tuple(min(col) for col in zip(*self.terms))

    def max_exponents(self) -> tuple:
        if not self.terms:
            return (0,) * len(self.vars)
        return tuple(max(col) for col in zip(*self.terms))

    def degree_range(self, var: str) -> tuple[int, int]:
        i = self.vars.index(var)
        if not self.terms:
            return (0, 0)
        vals = [e[i] for e in self.terms]
        return min(vals), max(vals)

    def coefficients(self) -> list:
        return [self.terms[e] for e in sorted(self.terms)]

    def items(self):
        return sorted(self.terms.items())

    def coeff(self, exps: Mapping[str, int] | tuple) -> object:
        if isinstance(exps, Mapping):
            exps = tuple(int(exps.get(v, 0)) for v in self.vars)
        return self.terms.get(tuple(exps), 0)

    def has_integer_coefficients(self) -> bool:
        for c in self.terms.values():
            if isinstance(c, Cyclotomic):
                if not c.is_rational() or c.to_rational().denominator != 1:
                    return False
            elif isinstance(c, Fraction):
                if c.denominator != 1:
                    return False
            elif not isinstance(c, int):
                return False
        return True

    def with_integer_coefficients(self) -> "LaurentPoly":
        out = {}
        for e, c in self.terms.items():
            if isinstance(c, Cyclotomic):
                c = c.to_rational()
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"coefficient {c} is not an integer")
                c = c.numerator
            out[e] = int(c)
        return LaurentPoly._raw(self.vars, out)

    def extend_vars(self, vars: Iterable[str]) -> "LaurentPoly":
        """Re-express in a larger variable set containing the current one."""
        vars = tuple(vars)
        idx = [vars.index(v) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            full = [0] * len(vars)
            for k, i in enumerate(idx):
                full[i] = e[k]
            out[tuple(full)] = c
        return LaurentPoly._raw(vars, out)

    def drop_vars(self, vars: Iterable[str]) -> "LaurentPoly":
        """Remove variables that do not occur (all their exponents are zero)."""
        drop = set(vars)
        keep = [i for i, v in enumerate(self.vars) if v not in drop]
        for e in self.terms:
            if any(e[i] for i, v in enumerate(self.vars) if v in drop):
                raise ValueError(f"cannot drop variables that occur: {sorted(drop)}")
        return LaurentPoly._raw(
            tuple(self.vars[i] for i in keep),
            {tuple(e[i] for i in keep): c for e, c in self.terms.items()},
        )

    # --- maps --------------------------------------------------------------

    def adams(self, n: int) -> "LaurentPoly":
        """The Adams operator: every variable ``v`` is replaced by ``v**n``."""
        if n < 1:
            raise ValueError(f"Adams operator index must be >= 1, got {n}")
        if n == 1:
            return self
        return LaurentPoly._raw(
            self.vars, {tuple(k * n for k in e): c for e, c in self.terms.items()}
        )

    def substitute(self, mapping: Mapping[str, "LaurentPoly"], vars=None) -> "LaurentPoly":
        return substitute(self, mapping, vars)

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at numeric (or exact) values for every variable."""
        vals = [values[v] for v in self.vars]
        powers: list[dict] = [dict() for _ in self.vars]
        total = 0
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    cache = powers[i]
                    p = cache.get(k)
                    if p is None:
                        p = vals[i] ** k
                        cache[k] = p
                    term = term * p
            total = total + term
        return total

    # --- display / io --------------------------------------------------

    def __repr__(self):
        return f"LaurentPoly({self.vars}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            if not mono:
                parts.append(f"{c}" if not isinstance(c, Cyclotomic) else f"({c})")
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                cs = f"({c})" if isinstance(c, (Cyclotomic, Fraction)) else f"{c}"
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json_obj(self) -> dict:
        terms = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if isinstance(c, Cyclotomic):
                c = c.to_rational()
            terms.append(
                {"c": str(c), "e": {v: k for v, k in zip(self.vars, e) if k}}
            )
        return {"vars": list(self.vars), "terms": terms}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "LaurentPoly":
        vars = tuple(obj["vars"])
        terms = {}
        for t in obj["terms"]:
            c = Fraction(t["c"])
            c = c.numerator if c.denominator == 1 else c
            e = tuple(int(t["e"].get(v, 0)) for v in vars)
            if e in terms:
                raise ValueError(f"duplicate exponent {e} in polynomial JSON")
            terms[e] = c
        return cls(vars, terms)

    @classmethod
    def from_json(cls, text: str) -> "LaurentPoly":
        return cls.from_json_obj(json.loads(text))


def poly_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    a._check(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


def substitute(p: LaurentPoly, mapping: Mapping[str, LaurentPoly], vars=None) -> LaurentPoly:
    """Apply the ring map sending each variable in ``mapping`` to its image.

    Variables missing from ``mapping`` map to themselves; their names must
    exist in the target variable set ``vars`` (default: the images' set, or
    ``p.vars`` when the mapping is empty).  Negative exponents require the
    image to be a monomial with invertible coefficient.
    """
    if vars is None:
        images = [q for q in mapping.values() if isinstance(q, LaurentPoly)]
        vars = images[0].vars if images else p.vars
    vars = tuple(vars)
    targets = []
    for v in p.vars:
        if v in mapping:
            q = mapping[v]
            if not isinstance(q, LaurentPoly):
                q = LaurentPoly.constant(vars, q)
            elif q.vars != vars:
                q = q.extend_vars(vars) if set(q.vars) <= set(vars) else q
                if q.vars != vars:
                    raise ValueError(f"image of {v} lives in {q.vars}, expected {vars}")
        else:
            if v not in vars:
                raise ValueError(f"variable {v} has no image and is absent from {vars}")
            q = LaurentPoly.var(vars, v)
        targets.append(q)

    # Monomial images are handled by exponent arithmetic, the rest by powering.
    mono = []
    for q in targets:
        if q.is_monomial():
            (e, c), = q.terms.items()
            mono.append((e, c))
        else:
            mono.append(None)
    power_cache: list[dict] = [dict() for _ in targets]
    out = LaurentPoly.zero(vars)
    acc: dict = {}
    zero_e = (0,) * len(vars)
    for e, c in p.terms.items():
        exp = list(zero_e)
        coef = c
        rest = None
        for i, k in enumerate(e):
            if not k:
                continue
            m = mono[i]
            if m is not None:
                me, mc = m
                for j, x in enumerate(me):
                    exp[j] += x * k
                if mc != 1:
                    coef = coef * (mc ** k if k > 0 else _div_scalar(1, mc) ** (-k))
            else:
                if k < 0:
                    raise ValueError(
                        f"cannot substitute non-monomial {targets[i]} for {p.vars[i]} "
                        f"appearing with negative exponent"
                    )
                pw = power_cache[i].get(k)
                if pw is None:
                    pw = targets[i] ** k
                    power_cache[i][k] = pw
                rest = pw if rest is None else rest * pw
        if not coef:
            continue
        if rest is None:
            key = tuple(exp)
            v = acc.get(key, 0) + coef
            if v:
                acc[key] = v
            else:
                acc.pop(key, None)
        else:
            out = out + rest.shift(tuple(exp), coef)
    return out + LaurentPoly._raw(vars, acc)


def _grlex_key(e):
    return (sum(e), e)


def exact_divide(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Return ``p / q`` if ``q`` divides ``p`` in the Laurent ring.

    Raises :class:`NotDivisible` (carrying the remainder) otherwise.
    """
    p._check(q)
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p:
        return LaurentPoly.zero(p.vars)
    if len(q.terms) == 1:
        (e, c), = q.terms.items()
        neg = tuple(-k for k in e)
        return LaurentPoly._raw(
            p.vars, {_add_exp(x, neg): _div_scalar(v, c) for x, v in p.terms.items()}
        )
    if len(q.terms) == 2:
        return _divide_binomial(p, q)
    return _divide_general(p, q)


def _divide_binomial(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    # q = a X^u + b X^v = a X^u (1 + (b/a) X^w), w = v - u; solve along lines e + k w.
    (u, a), (v, b) = sorted(q.terms.items())
    w = tuple(y - x for x, y in zip(u, v))
    c = _div_scalar(b, a)
    pivot = next(i for i, k in enumerate(w) if k)
    wp = w[pivot]
    lines: dict = {}
    for e, val in p.terms.items():
        k = e[pivot] // wp
        base = tuple(x - k * y for x, y in zip(e, w))
        lines.setdefault(base, {})[k] = val
    out = {}
    neg_u = tuple(-x for x in u)
    leftover = {}
    for base, line in lines.items():
        kmin, kmax = min(line), max(line)
        prev = 0
        for k in range(kmin, kmax + 1):
            cur = line.get(k, 0) - c * prev if prev else line.get(k, 0)
            if k == kmax:
                if cur:
                    leftover[tuple(x + k * y for x, y in zip(base, w))] = cur
                break
            if cur:
                e = tuple(x + k * y + z for x, y, z in zip(base, w, neg_u))
                out[e] = _div_scalar(cur, a)
            prev = cur
    if leftover:
        raise NotDivisible(
            f"{len(leftover)} remainder terms dividing by {q}",
            LaurentPoly._raw(p.vars, leftover),
        )
    return LaurentPoly._raw(p.vars, out)


def _divide_general(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    # Shift both into the ordinary polynomial ring, then grlex long division.
    pmin, qmin = p.min_exponents(), q.min_exponents()
    ps = {tuple(a - b for a, b in zip(e, pmin)): c for e, c in p.terms.items()}
    qs = {tuple(a - b for a, b in zip(e, qmin)): c for e, c in q.terms.items()}
    lead_e = max(qs, key=_grlex_key)
    lead_c = qs[lead_e]
    rem = dict(ps)
    heap = [(-sum(e), tuple(-k for k in e)) for e in rem]
    heapq.heapify(heap)
    quot = {}
    leftover = {}
    while heap:
        neg_deg, neg_e = heapq.heappop(heap)
        e = tuple(-k for k in neg_e)
        c = rem.pop(e, 0)
        if not c:
            continue
        shift = tuple(a - b for a, b in zip(e, lead_e))
        if any(k < 0 for k in shift):
            leftover[e] = c
            continue
        factor = _div_scalar(c, lead_c)
        quot[shift] = quot.get(shift, 0) + factor
        for qe, qc in qs.items():
            if qe == lead_e:
                continue
            key = tuple(a + b for a, b in zip(qe, shift))
            old = rem.get(key)
            new = (old or 0) - factor * qc
            if old is None:
                heapq.heappush(heap, (-sum(key), tuple(-k for k in key)))
            if new:
                rem[key] = new
            else:
                rem[key] = 0
    if leftover:
        raise NotDivisible(
            f"{len(leftover)} remainder terms dividing by {q}",
            LaurentPoly._raw(p.vars, leftover).shift(pmin),
        )
    offset = tuple(a - b for a, b in zip(pmin, qmin))
    return LaurentPoly._raw(
        p.vars, {_add_exp(e, offset): c for e, c in quot.items() if c}
    )
