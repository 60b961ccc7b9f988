#! /usr/bin/env python
"""Betti numbers of twisted Higgs moduli, read off the Poincare polynomial."""

from hitchin_count import poincare_polynomial, euler_characteristic
from hitchin_count.topology import euler_closed_form

# genus 2, rank 2, odd degree, twisting divisor of degree 5 (stable range)
res = poincare_polynomial(2, 2, 5, 1)
for i, b in enumerate(res.coeffs):
    if b:
        print(f"b_{i:<3} {b}")

print("P(-1) =", res.euler(), " closed form:", euler_closed_form(2, 2, 5))

# Euler characteristic as degD grows; it only depends on (g, n, degD)
for degD in range(1, 7):
    print(degD, euler_characteristic(2, 2, degD, 1))

# rank 3 takes noticeably longer
# res3 = poincare_polynomial(2, 3, 5, 1)
# print(res3.coeffs)
