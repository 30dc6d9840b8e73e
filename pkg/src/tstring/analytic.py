"""Floating-point evaluation: the extended theta function, the extended
eta^-3 product, the Poisson kernel and the radial average over the circle
``omega = t e^(2 pi i u)``.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .kostant import tstring_a
from .lattice import ThetaTerm, theta_term_list
from .weyl import StringProblem

__all__ = [
    "EvalConfig",
    "TruncationWarning",
    "eval_theta_ext",
    "eval_eta_m3",
    "poisson",
    "radial_average",
    "radial_average_adaptive",
    "radial_average_fourier",
    "eval_tstring_series",
    "theta_eta_at_one",
    "report",
]


class TruncationWarning(UserWarning):
    pass


@dataclass
class EvalConfig:
    tau: complex
    t: float
    halfN_max: Fraction = Fraction(30)
    nmax: int = 60
    quad_points: int = 1024
    qmax: int = 20

    def __post_init__(self):
        self.tau = complex(self.tau)
        self.t = float(self.t)
        self.halfN_max = Fraction(self.halfN_max)
        if self.tau.imag <= 0:
            raise ValueError("tau must lie in the upper half plane")
        if not 0 < self.t <= 1:
            raise ValueError("t must lie in (0, 1]")
        if self.halfN_max <= 0:
            raise ValueError("halfN_max must be positive")
        if self.nmax < 0 or self.qmax < 0:
            raise ValueError("nmax and qmax must be nonnegative")
        if self.quad_points < 16 or self.quad_points % 2:
            raise ValueError("quad_points must be even and at least 16")

    def as_dict(self):
        d = asdict(self)
        d["tau"] = [self.tau.real, self.tau.imag]
        d["halfN_max"] = str(self.halfN_max)
        return d


def _term_arrays(terms: Sequence[ThetaTerm]):
    sign = np.array([tt.sign for tt in terms], dtype=float)
    halfN = np.array([float(tt.halfN) for tt in terms])
    tsh = np.array([tt.tshift for tt in terms], dtype=float)
    zsh = np.array([float(tt.zshift) for tt in terms])
    return sign, halfN, tsh, zsh


def eval_theta_ext(terms: Sequence[ThetaTerm], omega, tau):
    """``sum sign e^(2 pi i tau N/2) t^tshift e^(2 pi i u zshift)`` at ``omega = t e^(2 pi i u)``.

    ``omega`` may be an array; the result has its shape.
    """
    omega = np.asarray(omega, dtype=complex)
    t = np.abs(omega)
    if np.any(t == 0):
        raise ValueError("the extended theta function is defined for omega != 0")
    u = np.angle(omega) / (2 * np.pi)
    sign, halfN, tsh, zsh = _term_arrays(terms)
    if sign.size == 0:
        return np.zeros_like(omega)
    base = sign * np.exp(2j * np.pi * tau * halfN)
    flat_t, flat_u = t.ravel(), u.ravel()
    mat = np.power.outer(flat_t, tsh) * np.exp(2j * np.pi * np.outer(flat_u, zsh))
    out = mat @ base
    return out.reshape(omega.shape) if omega.ndim else complex(out[0])


def eval_eta_m3(omega, tau, nmax: int, damped: bool = False):
    """``e^(-pi i tau/4) prod_n 1/((1 - c q^n)(1 - omega q^n)(1 - conj(omega) q^n))``.

    ``c = 1`` by default.  With ``damped=True``, ``c = |omega|``: this is the
    numeric image of the formal ``q^(-1/8) xi_t`` on ``z = e^(2 pi i u)``, and
    is the factor that makes the radial average reproduce the t-string
    function for ``t < 1``.  Both agree on ``|omega| = 1``.
    """
    omega = np.asarray(omega, dtype=complex)
    q = np.exp(2j * np.pi * tau)
    if abs(q) >= 1:
        raise ValueError("need |q| < 1")
    qn = q ** np.arange(1, nmax + 1)
    w = omega[..., None]
    first = np.abs(w) if damped else 1.0
    prod = np.prod((1 - first * qn) * (1 - w * qn) * (1 - np.conj(w) * qn), axis=-1)
    out = np.exp(-1j * np.pi * tau / 4) / prod
    return out if omega.ndim else complex(out)


def poisson(omega):
    """``(1 - |omega|^2) / |1 - omega|^2`` on the open unit disc."""
    omega = np.asarray(omega, dtype=complex)
    r2 = np.abs(omega) ** 2
    if np.any(r2 >= 1):
        raise ValueError("Poisson kernel needs |omega| < 1")
    out = (1 - r2) / np.abs(1 - omega) ** 2
    return out if omega.ndim else float(out)


def _integrand(cfg: EvalConfig, terms, M: int):
    u = np.arange(M) / M
    omega = cfg.t * np.exp(2j * np.pi * u)
    F = eval_theta_ext(terms, omega, cfg.tau) * eval_eta_m3(omega, cfg.tau, cfg.nmax, damped=True)
    return F, omega


def radial_average(cfg: EvalConfig, p: StringProblem, terms=None) -> complex:
    """Trapezoid rule for ``int_0^1 F(t e^(2 pi i u)) P_t(u) du`` with
    ``cfg.quad_points`` equispaced nodes."""
    if cfg.t >= 1:
        raise ValueError("radial average needs t < 1")
    if terms is None:
        terms = theta_term_list(p, cfg.halfN_max)
    F, omega = _integrand(cfg, terms, cfg.quad_points)
    return complex(np.mean(F * poisson(omega)))


def radial_average_adaptive(cfg: EvalConfig, p: StringProblem, tol: float = 1e-9,
                            cap: int = 1 << 17, terms=None):
    """Double the node count until successive values differ by less than ``tol``.

    Returns ``(value, nodes_used, converged)``.
    """
    if terms is None:
        terms = theta_term_list(p, cfg.halfN_max)
    M = cfg.quad_points
    prev = radial_average(_with(cfg, quad_points=M), p, terms)
    while M < cap:
        M *= 2
        cur = radial_average(_with(cfg, quad_points=M), p, terms)
        if abs(cur - prev) < tol:
            return cur, M, True
        prev = cur
    return prev, M, False


def _with(cfg: EvalConfig, **kw) -> EvalConfig:
    d = {**asdict(cfg), **kw}
    return EvalConfig(**d)


def radial_average_fourier(cfg: EvalConfig, p: StringProblem, terms=None) -> complex:
    """``sum_n t^|n| Fhat_n`` with ``Fhat`` the discrete Fourier coefficients of
    ``F`` sampled on the circle; equal to the trapezoid value by Parseval."""
    if terms is None:
        terms = theta_term_list(p, cfg.halfN_max)
    M = cfg.quad_points
    F, _ = _integrand(cfg, terms, M)
    Fhat = np.fft.fft(F) / M
    n = np.fft.fftfreq(M, d=1.0 / M)
    # Fhat_k is the coefficient of e^(-2 pi i k u); pairing with P_t weights both by t^|k|
    return complex(np.sum(cfg.t ** np.abs(n) * Fhat))


def eval_tstring_series(p: StringProblem, cfg: EvalConfig, tail_tol: float = 1e-12) -> complex:
    """``e^(2 pi i tau s) sum_k K_{Lambda, lambda - k delta}(t) e^(2 pi i tau k)``."""
    a = tstring_a(p, int(cfg.qmax)).z_free_coeffs()
    q = np.exp(2j * np.pi * cfg.tau)
    total = 0j
    last = 0.0
    for k, poly in a.items():
        term = complex(poly(cfg.t)) * q ** int(k)
        total += term
        if int(k) == int(cfg.qmax):
            last = abs(term)
    if last > tail_tol:
        warnings.warn(f"last series term has magnitude {last:.2e}; raise qmax",
                      TruncationWarning, stacklevel=2)
    return np.exp(2j * np.pi * cfg.tau * float(p.s)) * total


def theta_eta_at_one(p: StringProblem, cfg: EvalConfig, terms=None) -> complex:
    """``theta_L(tau) eta(tau)^-3``, the ``t = 1`` string function."""
    if terms is None:
        terms = theta_term_list(p, cfg.halfN_max)
    return eval_theta_ext(terms, 1.0, cfg.tau) * eval_eta_m3(1.0, cfg.tau, cfg.nmax)


def report(lhs: complex, rhs: complex, cfg: EvalConfig, **extra) -> dict:
    out = {
        "lhs": [float(lhs.real), float(lhs.imag)],
        "rhs": [float(rhs.real), float(rhs.imag)],
        "abs_err": float(abs(lhs - rhs)),
        "config": cfg.as_dict(),
    }
    out.update(extra)
    return out


def report_json(rep: dict, **kw) -> str:
    return json.dumps(rep, **kw)
