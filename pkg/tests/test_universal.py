import pytest

from hitchin_count.partitions import Partition
from hitchin_count.polyalg import FactoredRational, LaurentPoly
from hitchin_count.universal import (
    InvariantViolation,
    boundary_factor,
    check_universal,
    hcal,
    hcal_series,
    rational_vars,
    universal_h,
    z_g,
    zcal_term,
)


def gens(g):
    vars = rational_vars(g)
    return vars, {v: LaurentPoly.var(vars, v) for v in vars}


def test_z_g_genus_zero():
    vars, v = gens(0)
    t, z = v["t"], v["z"]
    assert z_g(0, {"t": 1}) == FactoredRational(LaurentPoly.constant(vars, 1), [(0, 1), (1, 1)])


def test_z_g_genus_one_substituted():
    vars, v = gens(1)
    x, z, t = v["x1"], v["z"], v["t"]
    T = t**2 * z
    num = (1 - x * T) * (1 - x**-1 * z * T)
    assert z_g(1, {"t": 2, "z": 1}) * ((1 - T) * (1 - z * T)) == FactoredRational(num)


@pytest.mark.parametrize("g,p", [(0, 1), (1, 2), (2, 3), (3, 1)])
def test_zcal_single_cell(g, p):
    vars, v = gens(g)
    expected = z_g(g, {"t": 1}) * v["t"] ** (1 - g) * (-1) ** p
    assert zcal_term(g, p, Partition((1,))) == expected


def test_zcal_single_cell_cancels_for_g1_p2():
    assert zcal_term(1, 2, Partition((1,))) == z_g(1, {"t": 1})


def test_zcal_two_cells_genus_zero():
    vars, v = gens(0)
    t, z = v["t"], v["z"]
    # cells (a, l, h) = (1, 0, 2) and (0, 0, 1), p = 1
    expected = (-t * z) * t * z_g(0, {"t": 2, "z": 1}) * (-1) * t * z_g(0, {"t": 1})
    assert zcal_term(0, 1, Partition((2,))) == expected


@pytest.mark.parametrize("g,p", [(0, 1), (0, 2), (1, 1), (1, 3), (2, 2)])
def test_hcal_rank_one(g, p):
    vars, v = gens(g)
    t, z = v["t"], v["z"]
    expected = t ** (1 - g) * (-1) ** p
    for i in range(1, g + 1):
        x = v[f"x{i}"]
        expected = expected * (1 - x * t) * (1 - x**-1 * z * t)
    assert hcal(g, 1, p) == expected


@pytest.mark.parametrize("g,p", [(0, 1), (0, 3), (1, 1), (1, 2), (2, 2), (3, 1)])
def test_universal_rank_one_closed_form(g, p):
    h = universal_h(g, 1, p)
    z_only = boundary_factor(g).shift(tuple(g - 1 + p if v == "z" else 0 for v in h.poly.vars))
    assert h.poly == z_only
    assert h.z_shift == g - 1 + p


@pytest.mark.parametrize("g,n,p", [(1, 2, 1), (0, 3, 2), (2, 2, 1), (1, 3, 2)])
def test_series_oracle(g, n, p):
    assert hcal(g, n, p) == hcal_series(g, n, p)


def test_known_genus_zero_values():
    z = LaurentPoly.var(("z",), "z")
    assert universal_h(0, 2, 3).poly == z**5
    assert universal_h(0, 2, 2).poly == LaurentPoly.zero(("z",))


def test_rank_one_counts_pic_times_sections():
    # H_{1,1,p}(lambda, q) = q^p |E(F_q)|; with trace a = 1 over F_5, |E| = 5
    import cmath

    h = universal_h(1, 1, 3).poly
    lam = (1 + cmath.sqrt(1 - 20)) / 2
    assert abs(h.evaluate({"x1": lam, "z": 5}) - 5**3 * 5) < 1e-8


def test_check_universal_detects_asymmetry():
    h = universal_h(1, 2, 1).poly
    x = LaurentPoly.var(h.vars, "x1")
    with pytest.raises(InvariantViolation):
        check_universal(h + x, 1, 2, 1)
    with pytest.raises(InvariantViolation):
        check_universal(h / 2, 1, 2, 1)


def test_provenance_is_stable():
    assert universal_h(1, 2, 1).provenance == universal_h(1, 2, 1, check=False).provenance
    assert universal_h(1, 2, 1).provenance != universal_h(1, 2, 2).provenance


def test_parallel_matches_serial():
    from hitchin_count.universal import hcal_rational
    from hitchin_count.polyalg import rational_normalize

    assert rational_normalize(hcal_rational(1, 3, 1, workers=2)) == hcal(1, 3, 1)
