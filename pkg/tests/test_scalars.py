from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from hitchin_count.scalars import (
    Cyclotomic,
    cyclotomic_polynomial,
    divisors,
    euler_phi,
    moebius,
    psi_g_count,
    ramanujan_sum,
    roots_of_unity,
)


def test_divisors_small():
    assert divisors(1) == [1]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    with pytest.raises(ValueError):
        divisors(0)


def test_moebius_values():
    assert [moebius(n) for n in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]
    with pytest.raises(ValueError):
        moebius(0)


@given(st.integers(min_value=2, max_value=400))
def test_moebius_sums_to_zero(n):
    assert sum(moebius(d) for d in divisors(n)) == 0


@given(st.integers(1, 5), st.integers(1, 30))
def test_psi_counts_exact_order_elements(g, n):
    assert sum(psi_g_count(g, d) for d in divisors(n)) == n ** (2 * g)


def test_psi_brute_force():
    # elements of exact order 6 in (Z/6)^2
    from itertools import product

    def order(v, d):
        return min(k for k in range(1, d + 1) if all(k * x % d == 0 for x in v))

    assert psi_g_count(1, 6) == sum(order(v, 6) == 6 for v in product(range(6), repeat=2))


def test_cyclotomic_polynomial_degrees():
    for d in range(1, 25):
        assert len(cyclotomic_polynomial(d)) - 1 == euler_phi(d)
    assert cyclotomic_polynomial(6) == (1, -1, 1)


@pytest.mark.parametrize("d", range(1, 13))
def test_ramanujan_sum_brute(d):
    prims = roots_of_unity(d, primitive=True)
    for i in range(-d, 2 * d):
        total = sum((z**i for z in prims), Cyclotomic.constant(d, 0))
        assert total == ramanujan_sum(d, i)


def elements(order):
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.lists(coeff, min_size=1, max_size=2 * order).map(lambda cs: Cyclotomic(order, cs))


@given(st.sampled_from([3, 4, 5, 8, 12]).flatmap(lambda d: st.tuples(elements(d), elements(d), elements(d))))
def test_cyclotomic_ring_axioms(triple):
    a, b, c = triple
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - b) + b == a


@given(st.sampled_from([3, 5, 7, 8, 12]).flatmap(elements))
def test_cyclotomic_inverse(a):
    if a:
        assert a * a.inverse() == 1
        assert (a / a) == 1


def test_roots_of_unity_powers():
    z = Cyclotomic.root(12, 1)
    assert z**12 == 1
    assert z**6 == -1
    assert z**-1 == z**11
    assert sum(roots_of_unity(12), Cyclotomic.constant(12, 0)) == 0
    assert complex(Cyclotomic.root(4, 1)) == pytest.approx(1j)


def test_rational_interop():
    a = Cyclotomic.constant(5, Fraction(3, 2))
    assert a.is_rational() and a.to_rational() == Fraction(3, 2)
    with pytest.raises(ValueError):
        Cyclotomic.root(3) + Cyclotomic.root(5)
