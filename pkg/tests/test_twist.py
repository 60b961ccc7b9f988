import pytest
from hypothesis import given, strategies as st

from hitchin_count.polyalg import LaurentPoly
from hitchin_count.scalars import Cyclotomic, roots_of_unity
from hitchin_count.twist import (
    block_weights,
    flat_h,
    flat_h_tilde,
    flat_value_at_one,
    flat_value_closed_form,
    key_identity_sides,
    twisted_h,
    twisted_h_average,
    twisted_h_tilde,
)
from hitchin_count.universal import InvariantViolation, universal_h


def test_block_weights():
    assert block_weights(1, 3) == (0,)
    assert block_weights(2, 3) == (0, 0, 1, 2)
    assert block_weights(3, 2) == (0, 0, 0, 1, 1)


def test_trivial_root():
    assert twisted_h(2, 2, 1, 1, 5).poly == universal_h(2, 2, 1).poly


@pytest.mark.parametrize("p", [1, 2])
def test_genus_one_rank_two(p):
    full = universal_h(1, 1, 2 * p).poly
    assert twisted_h(1, 2, p, 2, 0).poly == full
    assert twisted_h(1, 2, p, 2, 1).poly == LaurentPoly.zero(full.vars)
    assert twisted_h(1, 2, p, 2, 7).poly == LaurentPoly.zero(full.vars)


def test_genus_two_filter_by_parity():
    base = universal_h(3, 1, 2).poly
    even = twisted_h(2, 2, 1, 2, 0).poly
    odd = twisted_h(2, 2, 1, 2, 1).poly
    assert even + odd == base
    assert all(e[2] % 2 == 0 for e in even.terms)
    assert all(e[2] % 2 == 1 for e in odd.terms)


@pytest.mark.parametrize(
    "g,n,p,d", [(1, 2, 1, 2), (2, 2, 1, 2), (2, 2, 2, 2), (2, 3, 1, 3), (3, 2, 1, 2), (1, 3, 1, 3)]
)
def test_filter_matches_average(g, n, p, d):
    for e in range(d):
        assert twisted_h(g, n, p, d, e).poly == twisted_h_average(g, n, p, d, e)


@given(st.sampled_from([(2, 2, 1, 2), (2, 3, 1, 3), (1, 2, 2, 2)]), st.integers(-20, 20))
def test_depends_on_e_mod_d(case, e):
    g, n, p, d = case
    assert twisted_h(g, n, p, d, e).poly == twisted_h(g, n, p, d, e % d).poly
    assert twisted_h(g, n, p, d, e).e_mod_d == e % d


def test_rejects_bad_d():
    with pytest.raises(ValueError):
        twisted_h(1, 3, 1, 2, 0)


@pytest.mark.parametrize("g,p", [(1, 1), (2, 1), (2, 3)])
def test_tilde_rank_one(g, p):
    q = twisted_h_tilde(g, 1, p, 1, 0)
    assert q == LaurentPoly.constant(q.vars, 1)
    assert flat_h_tilde(g, 1, p, 1, 0) == LaurentPoly.constant(("u",), 1)


def test_tilde_odd_e_vanishes():
    assert not twisted_h_tilde(1, 2, 1, 2, 1)


def test_tilde_integral():
    assert twisted_h_tilde(1, 2, 1, 1, 0).has_integer_coefficients()


def test_flat_genus_one_rank_one():
    u = LaurentPoly.var(("xi", "u"), "u")
    for p in (1, 2, 3):
        assert flat_h(1, 1, p, 1) == u ** (2 * p) * (1 - u) ** 2


@pytest.mark.parametrize("g,n,p,d", [(1, 2, 1, 2), (2, 2, 1, 1), (2, 2, 1, 2), (2, 3, 2, 3)])
def test_flat_divisibility(g, n, p, d):
    from hitchin_count.polyalg import exact_divide

    vars = ("xi", "u")
    u = LaurentPoly.var(vars, "u")
    divisor = u ** (2 * (p + g - 1)) * (1 - u) ** (2 * g)
    exact_divide(flat_h(g, n, p, d), divisor)


@pytest.mark.parametrize("g,n,d", [(1, 2, 1), (1, 2, 2), (2, 2, 1), (2, 2, 2), (2, 3, 1), (2, 3, 3)])
@pytest.mark.parametrize("p", [1, 2])
def test_flat_value_closed_forms(g, n, d, p):
    for zeta in roots_of_unity(d):
        assert flat_value_at_one(g, n, p, d, zeta) == flat_value_closed_form(g, n, p, d, zeta)


def test_flat_value_genus_one_special():
    # p d odd and n/d = 2 mod 4 gives 2
    assert flat_value_closed_form(1, 2, 1, 1, Cyclotomic.root(1, 0)) == 2
    assert flat_value_at_one(1, 2, 1, 1, Cyclotomic.root(1, 0)) == 2
    assert flat_value_at_one(1, 2, 2, 2, Cyclotomic.root(2, 1)) == 1


@pytest.mark.parametrize("g,n,d,e", [(1, 2, 2, 0), (1, 2, 2, 1), (2, 2, 2, 0), (2, 2, 2, 1), (2, 3, 3, 2)])
def test_key_identity(g, n, d, e):
    for p in (1, 2):
        lhs, rhs = key_identity_sides(g, n, p, d, e)
        assert lhs == rhs


def test_tilde_rejects_broken_input(monkeypatch):
    import hitchin_count.twist as tw

    real = tw.twisted_h

    def broken(*args):
        res = real(*args)
        x = LaurentPoly.var(res.poly.vars, "x1")
        return tw.TwistedPoly(res.g, res.n, res.p, res.d, res.e_mod_d, res.poly + x)

    monkeypatch.setattr(tw, "twisted_h", broken)
    with pytest.raises(InvariantViolation):
        tw.twisted_h_tilde(1, 2, 1, 2, 0)
