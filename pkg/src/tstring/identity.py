"""The two exact routes to the normalized t-string function ``c = q^s a``.

``string_function_a`` goes through Kostka-Foulkes polynomials;
``string_function_b`` through the indefinite theta series and the formal
Poisson kernel.  Both return z-free :class:`Series3` with ``qmax = s + dmax``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .kostant import build_hbar, tstring_a
from .lattice import ThetaTerm, theta_formal, theta_term_list
from .series import Series3, expand_geometric_inverse
from .weyl import StringProblem

__all__ = [
    "xi_series",
    "string_function_a",
    "string_function_b",
    "hbar_route",
    "first_difference",
    "FormalReport",
    "verify_formal",
]

EIGHTH = Fraction(1, 8)


def xi_series(qmax) -> Series3:
    """``prod_n 1/((1 - t q^n)(1 - t q^n z^-1)(1 - t q^n z))`` up to ``q^qmax``."""
    qmax = Fraction(qmax)
    acc = Series3.one(qmax)
    n = 1
    while n <= qmax:
        for z in (0, -1, 1):
            acc = acc * expand_geometric_inverse(qmax, n, z, 1)
        n += 1
    return acc


def string_function_a(p: StringProblem, dmax: int) -> Series3:
    return tstring_a(p, dmax).shift(p.s, rebound=True)


def string_function_b(p: StringProblem, dmax: int,
                      terms: list[ThetaTerm] | None = None) -> Series3:
    """``ct(P_t q^(-1/8) xi_t theta)`` truncated at ``q^(s + dmax)``."""
    top = p.s + dmax + EIGHTH
    if terms is None:
        terms = theta_term_list(p, top)
    theta = theta_formal(p, top, terms)
    prod = xi_series(top) * theta
    return prod.shift(-EIGHTH, rebound=True).ct_poisson()


def hbar_route(p: StringProblem, dmax: int) -> Series3:
    """``ct(P_t xi_t H-bar)``; should equal the t-string function ``a``."""
    return (xi_series(dmax) * build_hbar(p, dmax)).ct_poisson()


def first_difference(x: Series3, y: Series3):
    """First ``(q, z, t)`` where the two series differ, with both coefficients."""
    tx = {(q, z, e): c for q, z, e, c in x.terms()}
    ty = {(q, z, e): c for q, z, e, c in y.terms()}
    for key in sorted(set(tx) | set(ty)):
        if tx.get(key, 0) != ty.get(key, 0):
            return key, tx.get(key, 0), ty.get(key, 0)
    return None


@dataclass
class FormalReport:
    problem: StringProblem
    dmax: int
    equal: bool
    diff: tuple | None
    lhs: Series3
    rhs: Series3


def verify_formal(p: StringProblem, dmax: int,
                  terms: list[ThetaTerm] | None = None) -> FormalReport:
    lhs = string_function_a(p, dmax)
    rhs = string_function_b(p, dmax, terms)
    diff = None if lhs == rhs else first_difference(lhs, rhs)
    return FormalReport(p, dmax, lhs == rhs, diff, lhs, rhs)
