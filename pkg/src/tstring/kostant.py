"""t-Kostant partition function, Kostka-Foulkes polynomials and t-string
functions for A_1^(1), plus a Freudenthal multiplicity oracle for ``t = 1``.

Positive roots are ``alpha_1 + n*delta`` (n >= 0), ``-alpha_1 + n*delta``
(n >= 1) and ``n*delta`` (n >= 1), all of multiplicity one.  A root-lattice
element ``b*alpha_1 + d*delta`` is addressed by the integer pair ``(b, d)``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, Tuple

import numpy as np

from .series import Series3, TPoly
from .weyl import (
    RHO,
    StringProblem,
    WeightVec,
    WeylElem,
    dot_action,
    index_I,
    tau_dot,
)

__all__ = [
    "KostantTable",
    "KostantRangeError",
    "build_kostant",
    "table_for_problem",
    "kprime",
    "ksf",
    "kpsf",
    "weyl_ring",
    "kostka_foulkes",
    "tstring_a",
    "build_hbar",
    "hbar_terms",
    "FreudenthalOracle",
    "freudenthal_mult",
]


class KostantRangeError(IndexError):
    """Lookup outside the region a :class:`KostantTable` computes exactly."""


class KostantTable:
    """``K_t(b*alpha_1 + d*delta)`` for ``0 <= d <= dmax`` and ``b + d <= bmax + dmax``.

    Entries are dense integer coefficient vectors in ``t`` (object dtype, so
    coefficients are unbounded Python ints).
    """

    def __init__(self, dmax: int, bmax: int):
        if dmax < 0 or bmax < 0:
            raise ValueError("dmax and bmax must be nonnegative")
        self.dmax = dmax
        self.bmax = bmax
        self.bmin = -dmax
        self.btop = bmax + dmax
        nb = self.btop - self.bmin + 1
        self.deg = self.btop + 2 * dmax + 1
        T = np.zeros((nb, dmax + 1, self.deg + 1), dtype=object)
        T[-self.bmin, 0, 0] = 1
        # alpha_1-type and delta-type roots first, -alpha_1-type last: every
        # partial sum then has b <= b_final + (remaining d), so the box is exact
        roots = [(1, n) for n in range(dmax + 1)] + [(0, n) for n in range(1, dmax + 1)]
        roots += [(-1, n) for n in range(1, dmax + 1)]
        for rb, rd in roots:
            _knapsack_pass(T, rb, rd, self.bmin)
        self._T = T
        self._cache: Dict[Tuple[int, int], TPoly] = {}

    def valid(self, b: int, d: int) -> bool:
        return d <= self.dmax and b + d <= self.btop

    def __call__(self, b: int, d: int) -> TPoly:
        return self.lookup(b, d)

    def lookup(self, b: int, d: int) -> TPoly:
        if d < 0 or b < -d:
            return TPoly()
        if not self.valid(b, d):
            raise KostantRangeError(
                f"K_t({b}a1 + {d}delta) outside table (dmax={self.dmax}, bmax={self.bmax})")
        key = (b, d)
        hit = self._cache.get(key)
        if hit is None:
            vec = self._T[b - self.bmin, d]
            hit = TPoly({e: int(c) for e, c in enumerate(vec) if c})
            self._cache[key] = hit
        return hit


def _knapsack_pass(T, rb: int, rd: int, bmin: int) -> None:
    """Multiply the table by ``1/(1 - t e(-root))`` in place."""
    nb, nd, _ = T.shape
    if rd == 0:
        for d in range(nd):
            for bi in range(max(rb, 0), nb):
                T[bi, d, 1:] += T[bi - rb, d, :-1]
        return
    for d in range(rd, nd):
        if rb == 0:
            T[:, d, 1:] += T[:, d - rd, :-1]
        elif rb > 0:
            T[rb:, d, 1:] += T[:-rb, d - rd, :-1]
        else:
            T[:rb, d, 1:] += T[-rb:, d - rd, :-1]


def build_kostant(dmax: int, bmax: int) -> KostantTable:
    return KostantTable(dmax, bmax)


def _as_pair(beta) -> Tuple[int, int]:
    if isinstance(beta, WeightVec):
        if not beta.in_root_lattice():
            raise ValueError(f"{beta} is not in the root lattice")
        return int(beta.b), int(beta.d)
    b, d = beta
    return int(b), int(d)


def kprime(tbl: KostantTable, beta) -> TPoly:
    """``K'(beta) = K(beta) + t K(r_1 . beta)``; ``r_1 . (b, d) = (-b-1, d)``."""
    b, d = _as_pair(beta)
    if d < 0:
        return TPoly()
    return tbl(b, d) + tbl(-b - 1, d).shift(1)


def ksf(tbl: KostantTable, beta, qmax: int) -> Series3:
    b, d = _as_pair(beta)
    return Series3(qmax, {n: {0: tbl(b, d + n)} for n in range(qmax + 1)})


def kpsf(tbl: KostantTable, beta, qmax: int) -> Series3:
    b, d = _as_pair(beta)
    return Series3(qmax, {n: {0: kprime(tbl, (b, d + n))} for n in range(qmax + 1)})


def weyl_ring(r: int) -> Iterator[WeylElem]:
    if r == 0:
        yield WeylElem(0, False)
        yield WeylElem(0, True)
        return
    for n in (r, -r):
        yield WeylElem(n, False)
        yield WeylElem(n, True)


def _alternating_terms(p: StringProblem, depth: int):
    """``(w, s(w))`` for every ``w`` with ``d(s(w)) + depth >= 0``.

    ``d(s(w))`` is concave in ``n`` with its peak at ``n = 0``, so the first
    ring with every term below ``-depth`` ends the search.
    """
    out = []
    r = 0
    while True:
        ring = [(w, p.s_of(w)) for w in weyl_ring(r)]
        live = [(w, s) for w, s in ring if s.d + depth >= 0]
        out.extend(live)
        if not live and r > 0:
            return out
        r += 1


def table_for_problem(p: StringProblem, depth: int) -> KostantTable:
    """Smallest table covering every Weyl-sum lookup up to q-order ``depth``."""
    bmax = 0
    for _, s in _alternating_terms(p, depth):
        bmax = max(bmax, int(s.b))
    return build_kostant(depth, bmax)


def kostka_foulkes(p: StringProblem, mu: WeightVec, tbl: KostantTable) -> TPoly:
    """``K_{Lambda, mu}(t) = sum_w eps(w) K_t(w(Lambda+rho) - (mu+rho))``."""
    if mu.m != p.m:
        raise ValueError("mu must have the same level as Lambda")
    diff = p.Lam - mu
    if not diff.in_root_lattice():
        raise ValueError("Lambda - mu must lie in the root lattice")
    total = TPoly()
    lam_b = mu.b
    r = 0
    while True:
        any_live = False
        for w in weyl_ring(r):
            beta = dot_action(w, p.Lam) - WeightVec(lam_b, mu.d, p.m)
            if beta.d < 0:
                continue
            any_live = True
            term = tbl(int(beta.b), int(beta.d))
            total = total + term * w.sign
        if not any_live and r > 0:
            return total
        r += 1


def _route_direct(p: StringProblem, qmax: int, tbl: KostantTable) -> Series3:
    data = {}
    for k in range(qmax + 1):
        mu = WeightVec(Fraction(p.l, 2), -k, p.m)
        data[k] = {0: kostka_foulkes(p, mu, tbl)}
    return Series3(qmax, data)


def _route_ksf(p: StringProblem, qmax: int, tbl: KostantTable) -> Series3:
    acc = Series3.zero(qmax)
    for w, s in _alternating_terms(p, qmax):
        acc = acc + ksf(tbl, s, qmax).scale(w.sign)
    return acc


class InvariantError(RuntimeError):
    pass


@lru_cache(maxsize=64)
def tstring_a(p: StringProblem, qmax: int, tbl: KostantTable | None = None) -> Series3:
    """``sum_k K_{Lambda, lambda - k delta}(t) q^k`` up to ``q^qmax``.

    Computed twice, once from Kostka-Foulkes values and once as the
    alternating sum of ``ksf(s(w))``; the two must agree exactly.
    """
    if tbl is None:
        tbl = table_for_problem(p, qmax)
    direct = _route_direct(p, qmax, tbl)
    via_ksf = _route_ksf(p, qmax, tbl)
    if direct != via_ksf:
        raise InvariantError(f"t-string routes disagree for {p.key()}")
    return direct


def hbar_terms(p: StringProblem, qmax):
    """Nonzero terms of the H-bar series with q-exponent ``<= qmax``.

    Yields ``(w, j, eps_bar, gamma)`` where ``gamma = tau^j . s(w)``.  The
    enumeration box uses that nonzero terms sit where ``|y| <= |x|`` and
    ``N(x, y) >= 4x^2``.
    """
    H = Fraction(qmax) + p.s + Fraction(1, 8)
    X = math.isqrt(int(max(H, 0) / 2) + 1) + 2
    jmax = 2 * X + 2
    out = []
    for j in range(-jmax, jmax + 1):
        nmax = X + abs(j) // 2 + 2
        for n in range(-nmax, nmax + 1):
            for flip in (False, True):
                w = WeylElem(n, flip)
                s = p.s_of(w)
                I = index_I(s, j)
                if I == 0:
                    continue
                eps = (-1) ** ((1 if flip else 0) + (j % 2)) * I
                gamma = tau_dot(j, s)
                if -gamma.d > qmax:
                    continue
                out.append((w, j, eps, gamma))
    return out


def build_hbar(p: StringProblem, qmax) -> Series3:
    """``sum eps_bar(w,j) t^j e(tau^j . s(w))`` with ``e(g) = z^b(g) q^-d(g)``."""
    terms = [(-g.d, g.b, j, eps) for _, j, eps, g in hbar_terms(p, qmax)]
    return Series3.from_terms(qmax, terms)


class FreudenthalOracle:
    """Weight multiplicities of ``L(Lambda)`` by Freudenthal's recursion.

    Imaginary roots ``n*delta`` have multiplicity one for A_1^(1).
    """

    def __init__(self, m: int, k: int):
        self.m = m
        self.Lam = WeightVec(Fraction(k, 2), 0, m)
        self._LR = self.Lam + RHO
        self._norm_LR = self._LR.form(self._LR)
        self._norm_L = self.Lam.form(self.Lam)
        self._memo: Dict[Tuple[Fraction, Fraction], int] = {}

    def _below(self, b: Fraction, d: Fraction) -> bool:
        # Lambda - mu = p*alpha_0 + r*alpha_1 with p, r nonnegative integers
        pp = -d
        r = self.Lam.b - b - d
        return pp >= 0 and r >= 0 and pp.denominator == 1 and r.denominator == 1

    def _norm_ok(self, b, d) -> bool:
        return 2 * b * b + 2 * self.m * d <= self._norm_L

    def mult(self, mu: WeightVec) -> int:
        if mu.m != self.m:
            raise ValueError("level mismatch")
        return self._mult(mu.b, mu.d)

    def _mult(self, b: Fraction, d: Fraction) -> int:
        key = (b, d)
        if key in self._memo:
            return self._memo[key]
        if not self._below(b, d) or not self._norm_ok(b, d):
            return 0
        if b == self.Lam.b and d == 0:
            self._memo[key] = 1
            return 1
        mr = WeightVec(b, d, self.m) + RHO
        coef = self._norm_LR - mr.form(mr)
        if coef <= 0:
            self._memo[key] = 0
            return 0
        total = Fraction(0)
        m = self.m
        for n in range(0, int(-d) + 1):
            roots = [(1, n)]
            if n >= 1:
                roots += [(-1, n), (0, n)]
            for rb, rd in roots:
                j = 1
                while True:
                    bj, dj = b + j * rb, d + j * rd
                    if dj > 0:
                        break
                    if rd == 0 and bj > 0 and not self._norm_ok(bj, dj):
                        break
                    if rb == 0:
                        ip = m * rd  # (mu + j n delta | n delta)
                    else:
                        ip = 2 * bj * rb + m * rd
                    mv = self._mult(bj, dj)
                    total += ip * mv
                    j += 1
        val = 2 * total / coef
        if val.denominator != 1:
            raise InvariantError(f"non-integral multiplicity at {key}: {val}")
        self._memo[key] = int(val)
        return int(val)


def freudenthal_mult(p: StringProblem, mu: WeightVec) -> int:
    return FreudenthalOracle(p.m, p.k).mult(mu)
