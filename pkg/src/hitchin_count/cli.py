"""Command-line entry point: ``hitchin-count <subcommand> ...``.

Exit codes: 0 success, 1 invalid input (a JSON error object is printed),
2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from .cache import SCHEMA, PolyCache, cache_key
from .counting import (
    CountingError,
    CoverDatum,
    EvalPrecision,
    IntegralityFailed,
    WeilDatum,
    count_M_detail,
    count_N_trace0_detail,
    count_M_fixed_det_detail,
    verify_comparison,
)
from .oracle import BudgetExceeded, count_p1_rank1, count_p1_rank2_detail
from .polyalg import LaurentPoly, NotDivisible
from .topology import euler_closed_form, poincare_polynomial
from .twist import twisted_h
from .universal import InvariantViolation, universal_h


class UsageError(ValueError):
    pass


def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, LaurentPoly):
        return obj.to_json_obj()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def emit_json(obj: dict, out) -> None:
    payload = {"schema": SCHEMA, **obj}
    out.write(json.dumps(payload, separators=(",", ":"), default=_json_default) + "\n")


def emit_table(rows, out) -> None:
    width = max((len(str(k)) for k, _ in rows), default=0)
    for k, v in rows:
        out.write(f"{str(k).ljust(width)}  {v}\n")


# --- subcommands ---------------------------------------------------------------


def cmd_universal(args, cache):
    g, n, p = args.g, args.n, args.p
    if p < 1:
        raise UsageError(f"p must be >= 1, got {p}")
    poly = cache.get_or_compute(cache_key("H", g, n, p), lambda: universal_h(g, n, p).poly)
    return {"command": "universal", "g": g, "n": n, "p": p, "poly": poly}, [("H", str(poly))]


def cmd_twisted(args, cache):
    g, n, p, d, e = args.g, args.n, args.p, args.d, args.e
    if p < 1:
        raise UsageError(f"p must be >= 1, got {p}")
    if d < 1:
        raise UsageError(f"d must be a positive divisor of n, got {d}")
    poly = cache.get_or_compute(cache_key("Htw", g, n, p, d, e), lambda: twisted_h(g, n, p, d, e).poly)
    obj = {"command": "twisted", "g": g, "n": n, "p": p, "d": d, "e_mod_d": e % d, "poly": poly}
    return obj, [("H_twisted", str(poly))]


def cmd_poincare(args, cache):
    res = poincare_polynomial(args.g, args.n, args.degD, args.e)
    obj = {
        "command": "poincare",
        "g": res.g,
        "n": res.n,
        "degD": res.degD,
        "e": res.e,
        "betti": list(res.coeffs),
        "in_stable_range": res.in_stable_range,
    }
    rows = [(f"b_{i}", c) for i, c in enumerate(res.coeffs)]
    return obj, rows


def cmd_euler(args, cache):
    via_p = poincare_polynomial(args.g, args.n, args.degD, args.e).euler()
    closed = euler_closed_form(args.g, args.n, args.degD)
    if via_p != closed:
        raise InvariantViolation(f"Euler characteristic mismatch: P(-1)={via_p}, closed form={closed}")
    obj = {"command": "euler", "from_poincare": via_p, "closed_form": closed}
    return obj, [("P(-1)", via_p), ("closed form", closed)]


def _count_rows(res):
    return [("count", res.value), ("residual", f"{res.residual:.3g}")]


def cmd_count_m(args, cache):
    w = WeilDatum.load(args.weil)
    res = count_M_detail(w, args.n, args.e, args.degD, args.m, args.precision)
    obj = {"command": "count-m", "count": res.value, "residual": res.residual}
    return obj, _count_rows(res)


def cmd_count_n(args, cache):
    w = WeilDatum.load(args.weil)
    cover = CoverDatum.load(args.cover)
    N = count_N_trace0_detail(w, cover, args.n, args.e, args.degD, args.m, args.precision)
    M = count_M_fixed_det_detail(w, cover, args.n, args.e, args.degD, args.m, args.precision)
    obj = {
        "command": "count-n",
        "trace_zero": N.value,
        "fixed_determinant": M.value,
        "residuals": [N.residual, M.residual],
    }
    return obj, [("|N|", N.value), ("|M fixed det|", M.value)]


def cmd_compare(args, cache):
    w = WeilDatum.load(args.weil)
    cover = CoverDatum.load(args.cover)
    rep = verify_comparison(w, cover, args.n, args.e, args.degD, args.m, args.precision)
    obj = {
        "command": "compare",
        "lhs": rep.lhs.value,
        "rhs": rep.rhs,
        "difference": rep.difference,
        "tolerance": rep.tolerance,
        "ok": rep.ok,
        "orbits": rep.per_orbit,
    }
    rows = [("lhs", rep.lhs.value), ("rhs", f"{rep.rhs.real:.6f}{rep.rhs.imag:+.3g}i"), ("agree", rep.ok)]
    if not rep.ok:
        raise InvariantViolation(f"comparison sides differ by {rep.difference:.3g}")
    return obj, rows


def cmd_oracle(args, cache):
    if args.n == 1:
        value = count_p1_rank1(args.q, args.e, args.degD, args.m)
        return {"command": "oracle", "n": 1, "count": value}, [("count", value)]
    if args.n != 2:
        raise UsageError("the P^1 oracle handles ranks 1 and 2")
    res = count_p1_rank2_detail(args.q, args.e, args.degD)
    rows = [("count", res.total)] + [
        (f"O({t['a']})+O({t['b']})", f"stable={t['stable']} aut={t['aut']} weighted={t['weighted']}")
        for t in res.breakdown
    ]
    return {"command": "oracle", "n": 2, "count": res.total, "breakdown": res.breakdown}, rows


def cmd_selfcheck(args, cache):
    from .selfcheck import run_all

    results = run_all(args.level)
    obj = {
        "command": "selfcheck",
        "level": args.level,
        "results": [{"criterion": r.number, "ok": r.ok, "detail": r.detail} for r in results],
    }
    rows = [(f"criterion {r.number}", ("PASS " if r.ok else "FAIL ") + r.title) for r in results]
    failed = [r.number for r in results if not r.ok]
    return obj, rows, (2 if failed else 0)


# --- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hitchin-count", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--cache-dir", default=None, help="polynomial cache directory")
    parser.add_argument("--verify-cache", action="store_true", help="recompute and compare cache hits")
    parser.add_argument("--prec-bits", type=int, default=256, help="working precision for counts")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def ints(p, *names):
        for name in names:
            p.add_argument(name, type=int)

    p = sub.add_parser("universal", help="universal polynomial H_{g,n,p}")
    ints(p, "g", "n", "p")
    p.set_defaults(func=cmd_universal)
    p = sub.add_parser("twisted", help="twisted polynomial H_{g,n,p,d,e}")
    ints(p, "g", "n", "p", "d", "e")
    p.set_defaults(func=cmd_twisted)
    p = sub.add_parser("poincare", help="Betti numbers of N_n^beta")
    ints(p, "g", "n", "degD", "e")
    p.set_defaults(func=cmd_poincare)
    p = sub.add_parser("euler", help="Euler characteristic by both routes")
    ints(p, "g", "n", "degD", "e")
    p.set_defaults(func=cmd_euler)
    p = sub.add_parser("count-m", help="|M_n^e| over F_{q^m}")
    p.add_argument("weil")
    ints(p, "n", "e", "degD", "m")
    p.set_defaults(func=cmd_count_m)
    p = sub.add_parser("count-n", help="|N_n^beta| and fixed-determinant |M_n^beta|")
    p.add_argument("weil")
    p.add_argument("cover")
    ints(p, "n", "e", "degD", "m")
    p.set_defaults(func=cmd_count_n)
    p = sub.add_parser("compare", help="check the count against the cover-curve sum")
    p.add_argument("weil")
    p.add_argument("cover")
    ints(p, "n", "e", "degD", "m")
    p.set_defaults(func=cmd_compare)
    p = sub.add_parser("oracle", help="brute-force counts")
    osub = p.add_subparsers(dest="target", required=True)
    o = osub.add_parser("p1", help="stable pairs on the projective line")
    o.add_argument("--q", type=int, required=True)
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--e", type=int, required=True)
    o.add_argument("--degD", type=int, required=True)
    o.add_argument("--m", type=int, default=1)
    o.set_defaults(func=cmd_oracle)
    p = sub.add_parser("selfcheck", help="run the acceptance suite")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.set_defaults(func=cmd_selfcheck)
    return parser


def _error(out, kind: str, message: str, as_json: bool) -> None:
    if as_json:
        emit_json({"error": {"type": kind, "message": message}}, out)
    else:
        out.write(f"error ({kind}): {message}\n")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(message)s")
    try:
        args.precision = EvalPrecision(bits=args.prec_bits)
        cache = PolyCache(args.cache_dir, verify=args.verify_cache)
        result = args.func(args, cache)
    except (InvariantViolation, NotDivisible, AssertionError) as exc:
        _error(out, type(exc).__name__, str(exc), args.json)
        return 2
    except (UsageError, CountingError, IntegralityFailed, BudgetExceeded, ValueError, OSError) as exc:
        _error(out, type(exc).__name__, str(exc), args.json)
        return 1
    code = 0
    if len(result) == 3:
        obj, rows, code = result
    else:
        obj, rows = result
    if args.json:
        emit_json(obj, out)
    else:
        emit_table(rows, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
