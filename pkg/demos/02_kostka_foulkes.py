"""
Kostka-Foulkes polynomials along a delta-string
===============================================

Method A: a Weyl-group alternating sum of the t-Kostant partition function.
At t = 1 the polynomials collapse to weight multiplicities, which we check
against an independent Freudenthal recursion.
"""

from fractions import Fraction

from tstring import normalize_problem, tstring_a
from tstring.kostant import FreudenthalOracle, build_kostant
from tstring.weyl import WeightVec

# The t-Kostant partition function counts multisets of positive roots,
# weighting each multiset by t^(number of parts).
K = build_kostant(3, 6)
for d in range(4):
    print(f"K_t({d} delta) =", K(0, d))

# Level 1, vacuum module: the string of Lambda_0 - k delta.
p = normalize_problem(1, 0, 0)
a = tstring_a(p, 8).z_free_coeffs()
print(f"\nanomaly s = {p.s}")
for k in range(9):
    print(f"k={k}:  {a[Fraction(k)]}")

# At t = 1 we recover the partition numbers.
print("t = 1:", [a[Fraction(k)](1) for k in range(9)])

# A level-3 example, compared with Freudenthal multiplicities.
p = normalize_problem(3, 3, 1)
a = tstring_a(p, 6).z_free_coeffs()
oracle = FreudenthalOracle(p.m, p.k)
for k in range(7):
    poly = a.get(Fraction(k))
    mult = oracle.mult(WeightVec(Fraction(p.l, 2), -k, p.m))
    print(f"(3,3,1) k={k}: {poly}   at t=1: {poly(1)}   Freudenthal: {mult}")
