"""
Truncated series in q, z and t
==============================

The formal side of the library works in a ring of truncated series whose
q- and z-exponents are exact rationals and whose coefficients are Laurent
polynomials in t with integer coefficients.
"""

from fractions import Fraction

from tstring import Series3, TPoly
from tstring.identity import xi_series
from tstring.series import expand_geometric_inverse, to_json

# A monomial carries (q-exponent, z-exponent, t-exponent, coefficient).
def show(series):
    return " + ".join(f"{c}*q^{q}*z^{z}*t^{e}" for q, z, e, c in series.terms())


x = Series3.monomial(3, Fraction(1, 2), 1, 2, 5)
print("x          =", show(x))

# 1/(1 - t q) expanded up to the bound q^3.
g = expand_geometric_inverse(3, 1, 0, 1)
print("1/(1-tq)   =", show(g))

# The product xi_t = prod 1/((1 - t q^n)(1 - t z q^n)(1 - t z^-1 q^n)).
xi = xi_series(2)
for q in (0, 1, 2):
    print(f"xi_t at q^{q}:", {str(z): str(c) for z, c in xi.coeff(q).items()})

# Pairing with the Poisson kernel P_t keeps z^n with weight t^|n| and sets z = 1.
print("ct(P_t xi_t) =", {str(q): str(c) for q, c in xi.ct_poisson().z_free_coeffs().items()})

# Series serialize to a stable JSON layout with exact rationals as strings.
print(to_json(Series3.monomial(2, 0, 1, 1) + Series3.one(2)))
print("t-polynomial evaluation:", TPoly({1: 1, 2: 3})(Fraction(1, 2)))
