"""
A tour of the universal polynomials
===================================

H_{g,n,p} lives in Z[x_1^{+-1}, ..., x_{2g}^{+-1}, z].  Rank one is a
product of boundary factors, rank two already has real structure.
"""

from hitchin_count import universal_h, hcal
from hitchin_count.universal import hcal_series

# rank one on an elliptic curve: just z^p times the boundary factor
print(universal_h(1, 1, 1).poly)

# rank two, genus one
H = universal_h(1, 2, 1).poly
print(H)
print("terms:", len(H.terms))

# the same polynomial comes out of the series logarithm; compare the raw
# generating pieces before the boundary factor is divided out
for g, n, p in [(0, 2, 1), (1, 2, 2), (2, 2, 1)]:
    print((g, n, p), hcal(g, n, p) == hcal_series(g, n, p))

# genus zero has no x variables; higher rank vanishes there for small p
for p in range(1, 5):
    print(p, universal_h(0, 2, p).poly)
