"""
The two routes agree exactly
============================

Method A (Kostka-Foulkes sums) and Method B (the theta series paired with
q^(-1/8) xi_t and the Poisson kernel) produce the same t-string function,
coefficient by coefficient, in exact arithmetic.
"""

from dataclasses import replace
from fractions import Fraction

from tstring import normalize_problem, verify_formal
from tstring.lattice import theta_term_list

for mkl in [(1, 0, 0), (2, 0, 0), (2, 1, 1), (2, 2, 0), (3, 1, 1), (3, 3, 1), (4, 2, 0)]:
    p = normalize_problem(*mkl)
    rep = verify_formal(p, 10)
    print(f"{mkl}: s = {str(p.s):>6}   equal up to q^10: {rep.equal}")

# Flipping the sign of one theta term breaks the identity, and the report
# locates the first coefficient where the two sides part ways.
p = normalize_problem(2, 2, 0)
terms = theta_term_list(p, p.s + Fraction(1, 8) + 10)
terms[3] = replace(terms[3], sign=-terms[3].sign)
rep = verify_formal(p, 10, terms)
(q, z, e), ca, cb = rep.diff
print(f"\nperturbed (2,2,0): equal={rep.equal}, first difference at q^{q} z^{z} t^{e}: {ca} vs {cb}")
