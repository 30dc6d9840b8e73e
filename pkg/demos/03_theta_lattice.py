"""
The indefinite lattice and its theta terms
==========================================

Method B sums over points of an indefinite binary lattice, one point per
orbit of an infinite dihedral group.  Orbits are reduced into the
fundamental domain {0 <= y <= x} u {0 > y > x} by the dagger map.
"""

from collections import defaultdict
from fractions import Fraction

from tstring import normalize_problem
from tstring.lattice import QuadForm, dagger, theta_term_list

m = 1
N = QuadForm(m)
pt = (Fraction(7, 3), Fraction(7, 2))
xd, yd, g = dagger(m, *pt)
print(f"N({pt[0]}, {pt[1]}) = {N(*pt)};  dagger -> ({xd}, {yd}) via a^{g.power}{' zeta' if g.flip else ''}")

p = normalize_problem(1, 0, 0)
terms = theta_term_list(p, Fraction(1, 12) + 6)
print(f"\n{len(terms)} orbit representatives with N/2 <= 6 + 1/12; the first few:")
for tt in terms[:6]:
    print("  ", tt.to_record())

# At t = 1 and z = 1 the signed sum is the theta function of the lattice.
# For level 1 it equals eta(tau)^2 = q^(1/12) (1 - 2q - q^2 + 2q^3 + q^4 + 2q^5 ...).
coeffs = defaultdict(int)
for tt in terms:
    coeffs[int(tt.halfN - Fraction(1, 12))] += tt.sign
print("theta_L / q^(1/12):", [coeffs[n] for n in range(7)])
