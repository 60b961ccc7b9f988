"""The acceptance suite, shared by ``hitchin-count selfcheck`` and the test run.

Each check returns a :class:`CheckResult`; nothing here raises on a failed
comparison, so a report always covers every criterion.
"""

from __future__ import annotations

import json
import time
import traceback
from dataclasses import dataclass, field
from importlib import resources
from math import gcd

from .counting import (
    CoverDatum,
    WeilDatum,
    count_M,
    count_M_exact_g1,
    count_M_fixed_det_detail,
    count_N_trace0_detail,
    validate_weil,
    verify_comparison,
)
from .oracle import count_p1_rank1, count_p1_rank2
from .polyalg import LaurentPoly
from .scalars import Cyclotomic, divisors, psi_g_count, ramanujan_sum, roots_of_unity
from .topology import euler_closed_form, gcd_lemma_check, poincare_polynomial
from .twist import flat_value_at_one, flat_value_closed_form, key_identity_sides
from .universal import InvariantViolation, boundary_factor, check_universal, hcal, hcal_series, h_vars, universal_h


@dataclass
class CheckResult:
    number: int
    title: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0
    failures: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] criterion {self.number:>2}: {self.title} ({self.seconds:.2f}s) {self.detail}".rstrip()


def load_fixture(name: str) -> dict:
    return json.loads(resources.files("hitchin_count").joinpath("data").joinpath(name).read_text())


def _run(number, title, limit, body) -> CheckResult:
    start = time.perf_counter()
    failures: list = []
    try:
        detail = body(failures) or ""
    except Exception as exc:  # a crash is a failure of this criterion, not of the suite
        failures.append(f"{type(exc).__name__}: {exc}")
        detail = traceback.format_exc(limit=3).strip().splitlines()[-1]
    seconds = time.perf_counter() - start
    if limit is not None and seconds > limit:
        failures.append(f"took {seconds:.1f}s, limit {limit}s")
    if failures and not detail:
        detail = "; ".join(str(f) for f in failures[:3])
    return CheckResult(number, title, not failures, detail, seconds, failures)


def rank_one_closed_form(g: int, p: int) -> LaurentPoly:
    vars = h_vars(g)
    return boundary_factor(g, vars).shift(tuple(g - 1 + p if v == "z" else 0 for v in vars))


RANK_ONE_CASES = ((0, 1), (0, 3), (1, 1), (1, 2), (2, 2))


def criterion_1() -> CheckResult:
    def body(failures):
        for g, p in RANK_ONE_CASES:
            got = universal_h(g, 1, p).poly
            if got != rank_one_closed_form(g, p):
                failures.append(f"H_{{{g},1,{p}}} = {got}")
        return f"{len(RANK_ONE_CASES)} cases"

    return _run(1, "rank-one closed form", 1.0, body)


def series_grid(level: str):
    if level == "quick":
        return [(g, n, p) for g in (0, 1, 2) for n in (1, 2) for p in (1, 2)] + [(1, 3, 1)]
    return [(g, n, p) for g in (0, 1, 2) for n in (1, 2, 3) for p in (1, 2, 3)]


def criterion_2(level: str = "full") -> CheckResult:
    def body(failures):
        grid = series_grid(level)
        for g, n, p in grid:
            if hcal(g, n, p) != hcal_series(g, n, p):
                failures.append(f"(g,n,p)={(g, n, p)}")
        return f"{len(grid)} cases"

    return _run(2, "series and direct formulas agree", 300.0, body)


def criterion_3(level: str = "full") -> CheckResult:
    def body(failures):
        grid = series_grid(level)
        for g, n, p in grid:
            try:
                check_universal(universal_h(g, n, p).poly, g, n, p)
            except InvariantViolation as exc:
                failures.append(str(exc))
        return f"{len(grid)} cases"

    return _run(3, "symmetry, integrality and divisibility", None, body)


EULER_CASES = {
    (2, 2, 2): -32,
    (2, 2, 1): 32,
    (1, 2, 1): 5,
    (1, 2, 2): 1,
    (1, 3, 1): 1,
    (2, 3, 2): -243,
}


def criterion_4() -> CheckResult:
    def body(failures):
        for (g, n, degD), want in EULER_CASES.items():
            via_p = poincare_polynomial(g, n, degD, 1).euler()
            closed = euler_closed_form(g, n, degD)
            if not via_p == closed == want:
                failures.append(f"{(g, n, degD)}: P(-1)={via_p}, closed={closed}, expected {want}")
        return f"{len(EULER_CASES)} cases, both paths"

    return _run(4, "Euler characteristics", 600.0, body)


def criterion_5() -> CheckResult:
    def body(failures):
        for g, n, degD in EULER_CASES:
            # poincare_polynomial raises on a negative coefficient or degree overflow
            res = poincare_polynomial(g, n, degD, 1)
            if min(res.coeffs) < 0 or len(res.coeffs) - 1 > res.degree_bound:
                failures.append(f"{(g, n, degD)}: {res.coeffs}")
        return f"{len(EULER_CASES)} cases"

    return _run(5, "Poincare polynomials nonnegative within the degree bound", None, body)


P1_RANK2_CASES = ((2, 1, 0), (2, 1, 1), (3, 1, 0))
P1_RANK1_CASES = ((2, 0, -1), (2, 0, 0), (2, 0, 1), (3, 5, 0), (3, 1, 2))


def criterion_6() -> CheckResult:
    def body(failures):
        for q, e, degD in P1_RANK2_CASES:
            w = WeilDatum(q, 0, (1,))
            a, b = count_M(w, 2, e, degD), count_p1_rank2(q, e, degD)
            if a != b:
                failures.append(f"rank 2 {(q, e, degD)}: formula {a}, oracle {b}")
        for q, e, degD in P1_RANK1_CASES:
            w = WeilDatum(q, 0, (1,))
            for m in (1, 2):
                a, b = count_M(w, 1, e, degD, m), count_p1_rank1(q, e, degD, m)
                if a != b:
                    failures.append(f"rank 1 {(q, e, degD, m)}: formula {a}, oracle {b}")
        return f"{len(P1_RANK2_CASES)} rank-2 and {2 * len(P1_RANK1_CASES)} rank-1 cases"

    return _run(6, "P^1 brute-force oracle", 600.0, body)


KEY_IDENTITY_CASES = ((1, 2, 2, 0), (1, 2, 2, 1), (2, 2, 2, 0), (2, 2, 2, 1))


def criterion_7() -> CheckResult:
    def body(failures):
        for g, n, d, e in KEY_IDENTITY_CASES:
            for p in (1, 2):
                lhs, rhs = key_identity_sides(g, n, p, d, e)
                if lhs != rhs:
                    failures.append(f"(g,n,p,d,e)={(g, n, p, d, e)}")
        return f"{2 * len(KEY_IDENTITY_CASES)} cases"

    return _run(7, "cyclotomic average identity", None, body)


FLAT_GRID = ((1, 2, 1), (1, 2, 2), (2, 2, 1), (2, 2, 2), (2, 3, 1), (2, 3, 3))


def criterion_8() -> CheckResult:
    def body(failures):
        count = 0
        for g, n, d in FLAT_GRID:
            for p in (1, 2):
                for zeta in roots_of_unity(d):
                    count += 1
                    a = flat_value_at_one(g, n, p, d, zeta)
                    b = flat_value_closed_form(g, n, p, d, zeta)
                    if a != b:
                        failures.append(f"flat value {(g, n, p, d)} at {zeta}: {a} vs {b}")
        for d in range(1, 13):
            prims = roots_of_unity(d, primitive=True)
            for i in range(-d, 2 * d + 1):
                brute = sum((z**i for z in prims), Cyclotomic.constant(d, 0))
                if brute != ramanujan_sum(d, i):
                    failures.append(f"Ramanujan sum d={d}, i={i}")
        for n in range(1, 13):
            for degD in range(0, 4):
                for e in range(-n, 2 * n + 1):
                    if gcd(e, n) == 1 and not gcd_lemma_check(n, e, degD).ok:
                        failures.append(f"gcd lemma n={n}, e={e}, degD={degD}")
        for g in range(1, 6):
            for n in range(1, 31):
                if sum(psi_g_count(g, d) for d in divisors(n)) != n ** (2 * g):
                    failures.append(f"psi sum g={g}, n={n}")
        return f"{count} flat values, Ramanujan d<=12, gcd lemma n<=12, psi sums n<=30"

    return _run(8, "closed forms and number-theoretic lemmas", None, body)


def criterion_9() -> CheckResult:
    def body(failures):
        w = WeilDatum.from_json_obj(load_fixture("weil_elliptic_q2.json"))
        vw = validate_weil(w)
        if vw.jacobian_order(1) != 3:
            failures.append(f"|J(F_2)| = {vw.jacobian_order(1)}, expected 3")
        got = count_M(w, 1, 0, 1, 1)
        if got != 6:
            failures.append(f"count_M(n=1, degD=1, m=1) = {got}, expected 6")
        for n, e, degD in ((1, 0, 1), (2, 1, 1), (2, 1, 2), (3, 1, 1)):
            a = count_M(w, n, e, degD, 2)
            b = count_M(w.base_change(2), n, e, degD, 1)
            c = count_M_exact_g1(w, n, e, degD, 2)
            if not a == b == c:
                failures.append(f"m=2 {(n, e, degD)}: {a}, base-changed {b}, exact {c}")
        return "count_M = 6, m = 2 consistent"

    return _run(9, "elliptic fixture over F_2", None, body)


def criterion_10() -> CheckResult:
    def body(failures):
        w = WeilDatum.from_json_obj(load_fixture("weil_elliptic_q3.json"))
        cover = CoverDatum.from_json_obj(load_fixture("cover_elliptic_q3_n2.json"))
        n, e = 2, 1
        for degD in (1, 2, 3):
            for m in (1, 2):
                M = count_M_fixed_det_detail(w, cover, n, e, degD, m)
                N = count_N_trace0_detail(w, cover, n, e, degD, m)
                factor = w.q ** (m * (degD + 1 - w.g))
                if M.value != factor * N.value:
                    failures.append(f"degD={degD}, m={m}: M={M.value}, q^..*N={factor * N.value}")
                rep = verify_comparison(w, cover, n, e, degD, m)
                if not rep.ok:
                    failures.append(f"comparison degD={degD}, m={m}: difference {rep.difference:.3g}")
        return "fixed-determinant vs trace-zero and cover comparison"

    return _run(10, "twisted counting on the (g=1, n=2) fixture", None, body)


def run_all(level: str = "full") -> list[CheckResult]:
    if level not in ("quick", "full"):
        raise ValueError(f"unknown selfcheck level {level!r}")
    return [
        criterion_1(),
        criterion_2(level),
        criterion_3(level),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
    ]
