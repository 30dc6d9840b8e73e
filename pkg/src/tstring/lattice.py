"""The indefinite lattice side: the form N(x, y) = 2(m+2)x^2 - 2m y^2 on
Q^2, the hyperbolic generator ``a``, the mirror ``zeta``, fundamental-domain
reduction and the formal theta series built from orbit representatives.

All coordinates are exact :class:`fractions.Fraction` values.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .series import Series3
from .weyl import StringProblem, WeylElem, weyl_apply, RHO

__all__ = [
    "QuadForm",
    "GroupElem",
    "ThetaTerm",
    "in_fundamental",
    "in_f0",
    "dagger",
    "coset_offset",
    "coset_of",
    "enumerate_coset_in_F",
    "psi",
    "phi",
    "phi_inverse",
    "epsilon_sign",
    "theta_term_list",
    "theta_formal",
    "terms_to_json",
    "terms_from_json",
]

HALF = Fraction(1, 2)
Point = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class QuadForm:
    m: int

    def __call__(self, x, y) -> Fraction:
        return 2 * (self.m + 2) * x * x - 2 * self.m * y * y

    def bilinear(self, p: Point, q: Point) -> Fraction:
        return 2 * (self.m + 2) * p[0] * q[0] - 2 * self.m * p[1] * q[1]


@dataclass(frozen=True)
class GroupElem:
    """``a^power`` composed after ``zeta^flip`` (so ``zeta`` acts first)."""

    m: int
    power: int = 0
    flip: bool = False

    def __call__(self, x, y) -> Point:
        if self.flip:
            x = -x
        return _a_pow(self.m, self.power, x, y)

    def __mul__(self, other: "GroupElem") -> "GroupElem":
        # zeta a^k = a^-k zeta
        k = -other.power if self.flip else other.power
        return GroupElem(self.m, self.power + k, self.flip != other.flip)

    def inverse(self) -> "GroupElem":
        if self.flip:
            return self
        return GroupElem(self.m, -self.power, False)

    def __repr__(self):
        parts = []
        if self.power:
            parts.append("a" if self.power == 1 else f"a^{self.power}")
        if self.flip:
            parts.append("zeta")
        return "*".join(parts) or "e"


def _a(m, x, y):
    return (m + 1) * x + m * y, (m + 2) * x + (m + 1) * y


def _a_inv(m, x, y):
    return (m + 1) * x - m * y, -(m + 2) * x + (m + 1) * y


def _a_pow(m, k, x, y):
    step = _a if k >= 0 else _a_inv
    for _ in range(abs(k)):
        x, y = step(m, x, y)
    return x, y


def in_fundamental(x, y) -> bool:
    """Membership in ``{0 <= y <= x} u {0 > y > x}``."""
    return (0 <= y <= x) or (0 > y > x)


def in_f0(m: int, x, y) -> bool:
    """Membership in ``F~ u aF~ u zeta F~ u a zeta F~``."""
    for g in (GroupElem(m), GroupElem(m, 1), GroupElem(m, 0, True), GroupElem(m, 1, True)):
        u, v = g.inverse()(x, y)
        if in_fundamental(u, v):
            return True
    return False


def dagger(m: int, x, y) -> Tuple[Fraction, Fraction, GroupElem]:
    """Representative ``(x', y')`` in the fundamental domain and ``g`` with
    ``g(x', y') = (x, y)``.

    The ``<a>``-orbit is first pushed into ``-|x| < y <= |x|`` (where ``|y|``,
    equivalently ``|x|``, is minimal along the orbit); ``zeta`` then fixes the
    half-plane.
    """
    x, y = Fraction(x), Fraction(y)
    if QuadForm(m)(x, y) <= 0:
        raise ValueError(f"({x}, {y}) is not in the positive cone")
    power = 0
    while True:
        ax = abs(x)
        if y > ax:
            # a raises y on x > 0 and lowers it on x < 0
            if x > 0:
                x, y = _a_inv(m, x, y)
                power += 1
            else:
                x, y = _a(m, x, y)
                power -= 1
        elif y <= -ax:
            if x > 0:
                x, y = _a(m, x, y)
                power -= 1
            else:
                x, y = _a_inv(m, x, y)
                power += 1
        else:
            break
    flip = False
    if (x > 0 and y < 0) or (x < 0 and y >= 0):
        x = -x
        flip = True
    assert in_fundamental(x, y)
    # current = a^-power(original) (after possible zeta), so original = a^power zeta^flip (x, y)
    return x, y, GroupElem(m, power, flip)


def coset_offset(p: StringProblem, coset: int) -> Point:
    A, B = p.A, p.B
    return {
        1: (A, B),
        2: (A + HALF, B + HALF),
        3: (-A, B),
        4: (-A + HALF, B + HALF),
    }[coset]


def _in_coset(p: StringProblem, coset: int, x, y) -> bool:
    ox, oy = coset_offset(p, coset)
    return (x - ox).denominator == 1 and (y - oy).denominator == 1


def coset_of(p: StringProblem, x, y) -> int | None:
    for i in (1, 2, 3, 4):
        if _in_coset(p, i, x, y):
            return i
    return None


def enumerate_coset_in_F(p: StringProblem, coset: int, halfN_max) -> List[Point]:
    """Points of the coset inside the fundamental domain with ``N/2 <= halfN_max``.

    On the fundamental domain ``|y| <= |x|``, hence ``N >= 4x^2``.
    """
    halfN_max = Fraction(halfN_max)
    if halfN_max <= 0:
        return []
    N = QuadForm(p.m)
    ox, oy = coset_offset(p, coset)
    X = math.isqrt(math.ceil(halfN_max / 2)) + 1
    out = []
    for i in range(-X - 1, X + 2):
        x = ox + i
        if abs(x) > X:
            continue
        for jj in range(-X - 2, X + 3):
            y = oy + jj
            if abs(y) > abs(x) + 1:
                continue
            if in_fundamental(x, y) and N(x, y) / 2 <= halfN_max:
                out.append((x, y))
    out.sort(key=lambda pt: (N(*pt), pt[0], pt[1]))
    return out


def psi(p: StringProblem, x, y, coset: int) -> Point:
    """Transport a coset point of the fundamental domain into ``L_1``."""
    if not (_in_coset(p, coset, x, y) and in_fundamental(x, y)):
        raise ValueError(f"({x}, {y}) is not in L_{coset} and the fundamental domain")
    m = p.m
    g = {
        1: GroupElem(m),
        2: GroupElem(m, 1, True),
        3: GroupElem(m, 0, True),
        4: GroupElem(m, 1),
    }[coset]
    return g(x, y)


def phi(p: StringProblem, w: WeylElem, j: int) -> Point:
    """``(w, j) -> (j/2 + b(w(Lambda+rho))/(m+2), j/2 + b(lambda)/m)``."""
    x = Fraction(j, 2) + weyl_apply(w, p.Lam + RHO).b / (p.m + 2)
    y = Fraction(j, 2) + p.B
    return x, y


def phi_inverse(p: StringProblem, x, y) -> Tuple[WeylElem, int]:
    """Inverse of :func:`phi` on ``L_1 u L_2 u L_3 u L_4``."""
    coset = coset_of(p, x, y)
    if coset is None:
        raise ValueError(f"({x}, {y}) lies in none of the four cosets")
    j = 2 * (Fraction(y) - p.B)
    flip = coset in (3, 4)
    n = Fraction(x) - j / 2 + (p.A if flip else -p.A)
    assert j.denominator == 1 and n.denominator == 1
    return WeylElem(int(n), flip), int(j)


def epsilon_sign(x, y) -> int:
    return 1 if x > 0 else -1


@dataclass(frozen=True)
class ThetaTerm:
    x: Fraction
    y: Fraction
    sign: int
    halfN: Fraction
    tshift: int
    zshift: Fraction

    def to_record(self):
        f = lambda v: f"{v.numerator}/{v.denominator}"
        return {"x": f(self.x), "y": f(self.y), "sign": self.sign,
                "halfN": f(self.halfN), "tshift": self.tshift, "zshift": f(self.zshift)}

    @classmethod
    def from_record(cls, r):
        return cls(Fraction(r["x"]), Fraction(r["y"]), int(r["sign"]),
                   Fraction(r["halfN"]), int(r["tshift"]), Fraction(r["zshift"]))


def theta_term_list(p: StringProblem, halfN_max) -> List[ThetaTerm]:
    """One term per ``G_0``-orbit in ``L_1`` with ``N/2 <= halfN_max``.

    Representatives are the ``psi``-images of reduced coset points; the
    reduced point supplies the ``t`` and ``z`` exponents.
    """
    m = p.m
    N = QuadForm(m)
    out = []
    for coset in (1, 2, 3, 4):
        for xd, yd in enumerate_coset_in_F(p, coset, halfN_max):
            x, y = psi(p, xd, yd, coset)
            tsh = 2 * (yd - p.B)
            assert tsh.denominator == 1
            out.append(ThetaTerm(
                x=x, y=y, sign=epsilon_sign(x, y), halfN=N(x, y) / 2,
                tshift=int(tsh), zshift=(m + 2) * xd - m * yd - HALF))
    out.sort(key=lambda tt: (tt.halfN, tt.x, tt.y))
    return out


def theta_formal(p: StringProblem, qmax, terms: List[ThetaTerm] | None = None) -> Series3:
    """``sum sign * q^(N/2) t^tshift z^zshift`` over orbit representatives."""
    if terms is None:
        terms = theta_term_list(p, qmax)
    data = []
    for tt in terms:
        if tt.zshift.denominator != 1:
            raise ValueError(f"non-integer z-exponent {tt.zshift} for term at ({tt.x}, {tt.y})")
        data.append((tt.halfN, tt.zshift, tt.tshift, tt.sign))
    return Series3.from_terms(qmax, data)


def terms_to_json(terms: List[ThetaTerm], **kw) -> str:
    return json.dumps([tt.to_record() for tt in terms], **kw)


def terms_from_json(text: str) -> List[ThetaTerm]:
    return [ThetaTerm.from_record(r) for r in json.loads(text)]
