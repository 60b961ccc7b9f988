import json
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hitchin_count.counting import (
    CoverDatum,
    CoverInconsistent,
    EvalPrecision,
    FunctionalEquationViolated,
    IntegralityFailed,
    RootModulusViolated,
    WeilDatum,
    count_M,
    count_M_detail,
    count_M_exact_g1,
    count_M_fixed_det,
    count_N_trace0,
    evaluate_at,
    power_sums,
    validate_cover,
    validate_weil,
    verify_comparison,
)
from hitchin_count.selfcheck import load_fixture
from hitchin_count.universal import universal_h

E2 = WeilDatum(2, 1, (1, 0, 2))
E3 = WeilDatum(3, 1, (1, 0, 3))
P1 = WeilDatum(2, 0, (1,))
# genus two over F_3: y^2 = x^5 - x + 1 style data with a_1 = 1, a_2 = 1
G2 = WeilDatum(3, 2, (1, 1, 1, 3, 9))


def brute_points_y2_plus_y_eq_x3():
    pts = 1  # point at infinity
    for x in range(2):
        for y in range(2):
            if (y * y + y - x**3) % 2 == 0:
                pts += 1
    return pts


def test_elliptic_fixture_from_point_count():
    n_pts = brute_points_y2_plus_y_eq_x3()
    assert n_pts == 3
    a = 2 + 1 - n_pts
    assert E2.zeta_numerator == (1, -a, 2)


def test_validate_examples():
    vw = validate_weil(E2)
    (lam,) = vw.eigenvalues
    assert abs(lam**2 + 2) < 1e-60 and lam.imag > 0
    assert validate_weil(P1).eigenvalues == ()
    with pytest.raises(RootModulusViolated):
        validate_weil(WeilDatum(2, 1, (1, 3, 2)))
    with pytest.raises(FunctionalEquationViolated):
        validate_weil(WeilDatum(2, 1, (1, 0, 3)))
    with pytest.raises(FunctionalEquationViolated):
        validate_weil(WeilDatum(2, 1, (1, 0)))


def test_rank_one_counts():
    assert count_M(E2, 1, 0, 1, 1) == 6
    assert count_M(P1, 1, 0, 1, 1) == 4
    vw = validate_weil(E2)
    for m in (1, 2, 3):
        assert count_M(E2, 1, 0, 2, m) == vw.jacobian_order(m) * 2 ** (2 * m)


def test_genus_two_validates_and_counts():
    vw = validate_weil(G2)
    assert len(vw.eigenvalues) == 2
    assert count_M(G2, 1, 0, 3, 1) == vw.jacobian_order(1) * 3 ** 2
    assert count_M(G2, 2, 1, 3, 1) >= 0


def test_count_M_independent_of_e():
    for n in (2, 3):
        assert count_M(E2, n, 1, 1) == count_M(E2, n, 1 + n, 1)


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("n,e,degD", [(1, 0, 1), (2, 1, 1), (2, 1, 2), (3, 1, 1)])
def test_base_change_and_exact_path(m, n, e, degD):
    a = count_M(E2, n, e, degD, m)
    assert a == count_M(E2.base_change(m), n, e, degD, 1)
    assert a == count_M_exact_g1(E2, n, e, degD, m)


def test_power_sums_and_base_change():
    assert power_sums(E2, 4) == [2, 0, -4, 0, 8]
    assert E2.base_change(2).zeta_numerator == (1, 4, 4)
    assert G2.base_change(1) == G2


def test_evaluation_is_symmetric():
    vw = validate_weil(G2)
    poly = universal_h(2, 2, 1).poly
    l1, l2 = vw.eigenvalues
    ref = evaluate_at(poly, [l1, l2], 3)
    for xs in ([l2, l1], [3 / l1, l2], [l1, 3 / l2], [3 / l2, 3 / l1]):
        assert abs(evaluate_at(poly, xs, 3) - ref) < 1e-40


def test_integrality_failure_is_reported():
    with pytest.raises(IntegralityFailed):
        count_M(G2, 2, 1, 3, 1, EvalPrecision(bits=64, integrality_tolerance=1e-300))


def test_precision_validation():
    with pytest.raises(ValueError):
        EvalPrecision(bits=32)


def test_rejects_bad_arguments():
    from hitchin_count.counting import CountingError

    with pytest.raises(CountingError):
        count_M(E2, 2, 2, 1)
    with pytest.raises(CountingError):
        count_M(E2, 2, 1, 0)
    with pytest.raises(CountingError):
        count_M(WeilDatum(6, 0, (1,)), 1, 0, 1)


@pytest.fixture
def cover():
    return CoverDatum.from_json_obj(load_fixture("cover_elliptic_q3_n2.json"))


def test_cover_json_roundtrip(cover):
    assert CoverDatum.from_json_obj(json.loads(json.dumps(cover.to_json_obj()))) == cover
    assert cover.orbits[2].unit_exponent == Fraction(1, 2)


def test_cover_validation(cover):
    validate_cover(E3, cover, 2)
    bad = CoverDatum(cover.orbits[:2])
    with pytest.raises(CoverInconsistent):
        validate_cover(E3, bad, 2)
    with pytest.raises(CoverInconsistent):
        validate_cover(E2, cover, 2)  # block 0 differs
    wrong_blocks = CoverDatum.from_json_obj(
        {"orbits": [{"d": 1, "multiplicity": 4, "unit_exponent": "0", "eigen_blocks": [[1, 0, 3], [1]]}]}
    )
    with pytest.raises(CoverInconsistent):
        validate_cover(E3, wrong_blocks, 2)


def test_odd_order_unit_warns():
    cov = CoverDatum.from_json_obj(
        {
            "orbits": [
                {"d": 1, "multiplicity": 1, "unit_exponent": "0", "eigen_blocks": [[1, 0, 3]]},
                {"d": 3, "multiplicity": 8, "unit_exponent": "1/3", "eigen_blocks": [[1, 0, 3], [1]]},
            ]
        }
    )
    with pytest.warns(UserWarning):
        validate_cover(E3, cov, 3)


def test_trivial_rank_one_cover():
    cov = CoverDatum.from_json_obj(
        {"orbits": [{"d": 1, "multiplicity": 1, "unit_exponent": "0", "eigen_blocks": [[1, 0, 3]]}]}
    )
    for degD in (1, 2):
        assert count_N_trace0(E3, cov, 1, 0, degD) == 1
        assert count_M_fixed_det(E3, cov, 1, 0, degD) == 3 ** degD


@pytest.mark.parametrize("degD", [1, 2, 3])
@pytest.mark.parametrize("m", [1, 2])
def test_fixed_det_vs_trace_zero(cover, degD, m):
    M = count_M_fixed_det(E3, cover, 2, 1, degD, m)
    N = count_N_trace0(E3, cover, 2, 1, degD, m)
    assert M == 3 ** (m * degD) * N
    assert N > 0


@pytest.mark.parametrize("degD", [1, 2])
def test_comparison(cover, degD):
    rep = verify_comparison(E3, cover, 2, 1, degD, 1)
    assert rep.ok
    assert len(rep.per_orbit) == 3


@given(st.integers(1, 3), st.sampled_from([1, 3]))
def test_counts_are_nonnegative(degD, e):
    assert count_M_detail(E2, 2, e, degD).value >= 0
