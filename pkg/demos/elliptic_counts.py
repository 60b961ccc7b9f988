"""
Counting Higgs pairs over a finite field
========================================

An elliptic curve over F_2 with trace 0 has zeta numerator 1 + 2T^2.
"""

from hitchin_count import WeilDatum, count_M, validate_weil
from hitchin_count.oracle import count_p1_rank2

E = WeilDatum(q=2, g=1, zeta_numerator=(1, 0, 2))
V = validate_weil(E)
print("Frobenius eigenvalues:", [complex(a) for a in V.eigenvalues])
print("|J(F_2)| =", V.jacobian_order(1), "  |J(F_4)| =", V.jacobian_order(2))

# rank one, degree zero, D of degree one
print(count_M(E, 1, 0, 1))

# rank two over F_2 and over F_4; the second also equals the count for
# the base-changed curve
print(count_M(E, 2, 1, 1), count_M(E, 2, 1, 1, m=2), count_M(E.base_change(2), 2, 1, 1))

# on P^1 the formula can be checked against a brute-force enumeration
P1 = WeilDatum(q=2, g=0, zeta_numerator=(1,))
for degD in (0, 1):
    print(degD, count_M(P1, 2, 1, degD), count_p1_rank2(2, 1, degD))
