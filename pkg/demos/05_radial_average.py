"""
Radial averages on the disc
===========================

Numerically, the t-string function is the average of
F(omega) = theta_L(omega) * eta^(-3)(omega) over the circle |omega| = t
against the Poisson kernel.  As t -> 1 the kernel concentrates at omega = 1
and the average tends to theta_L * eta^-3, the ordinary string function.
"""

import numpy as np

from tstring import normalize_problem
from tstring.analytic import (
    EvalConfig,
    eval_eta_m3,
    eval_theta_ext,
    eval_tstring_series,
    poisson,
    radial_average,
    theta_eta_at_one,
)
from tstring.lattice import theta_term_list

p = normalize_problem(1, 0, 0)
terms = theta_term_list(p, 30)

cfg = EvalConfig(tau=0.75j, t=0.6)
avg = radial_average(cfg, p, terms)
ser = eval_tstring_series(p, cfg)
print(f"tau=0.75i, t=0.6: average {avg.real:.15f}, series {ser.real:.15f}, diff {abs(avg - ser):.1e}")

# The eta factor has to carry |omega| in its first product, (1 - |omega| q^n);
# with a plain (1 - q^n) the average drifts away from the series.
u = np.arange(cfg.quad_points) / cfg.quad_points
w = cfg.t * np.exp(2j * np.pi * u)
plain = np.mean(eval_theta_ext(terms, w, cfg.tau) * eval_eta_m3(w, cfg.tau, cfg.nmax) * poisson(w))
print(f"with an undamped first factor the difference is {abs(plain - ser):.1e}")

target = theta_eta_at_one(p, EvalConfig(tau=1j, t=0.9), terms)
print(f"\ntheta_L eta^-3 at tau = i: {target.real:.12f}")
for t, nodes in ((0.9, 256), (0.99, 2048), (0.999, 16384)):
    val = radial_average(EvalConfig(tau=1j, t=t, quad_points=nodes), p, terms)
    print(f"t={t:<6} nodes={nodes:<6} average {val.real:.12f}  error {abs(val - target):.2e}")
