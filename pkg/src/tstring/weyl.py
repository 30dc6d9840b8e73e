"""Root-space bookkeeping for the affine algebra A_1^(1).

Weights are written ``b*alpha_1 + d*delta + m*Lambda_0``.  The invariant form
is normalized so that ``(alpha_1|alpha_1) = 2``, ``(Lambda_0|delta) = 1`` and
``delta``, ``Lambda_0`` are isotropic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "WeightVec",
    "WeylElem",
    "StringProblem",
    "ALPHA1",
    "DELTA",
    "LAMBDA0",
    "RHO",
    "r1_act",
    "tau_act",
    "tau_inv_act",
    "sigma_act",
    "weyl_apply",
    "dot_action",
    "tau_dot",
    "index_I",
    "normalize_problem",
    "make_problem",
]


@dataclass(frozen=True)
class WeightVec:
    b: Fraction
    d: Fraction
    m: Fraction = Fraction(0)

    def __post_init__(self):
        for f in ("b", "d", "m"):
            v = getattr(self, f)
            if not isinstance(v, Fraction):
                object.__setattr__(self, f, Fraction(v))

    def __add__(self, other: "WeightVec") -> "WeightVec":
        return WeightVec(self.b + other.b, self.d + other.d, self.m + other.m)

    def __sub__(self, other: "WeightVec") -> "WeightVec":
        return WeightVec(self.b - other.b, self.d - other.d, self.m - other.m)

    def __neg__(self):
        return WeightVec(-self.b, -self.d, -self.m)

    def __mul__(self, c) -> "WeightVec":
        return WeightVec(self.b * c, self.d * c, self.m * c)

    __rmul__ = __mul__

    @property
    def level(self) -> Fraction:
        return self.m

    def in_root_lattice(self) -> bool:
        return self.m == 0 and self.b.denominator == 1 and self.d.denominator == 1

    def form(self, other: "WeightVec") -> Fraction:
        """Normalized invariant form."""
        return 2 * self.b * other.b + self.m * other.d + other.m * self.d


ALPHA1 = WeightVec(1, 0, 0)
DELTA = WeightVec(0, 1, 0)
LAMBDA0 = WeightVec(0, 0, 1)
# d(rho) = 0; only differences w(mu+rho) - (mu+rho) are ever used
RHO = WeightVec(Fraction(1, 2), 0, 2)


def r1_act(v: WeightVec) -> WeightVec:
    return WeightVec(-v.b, v.d, v.m)


def tau_act(v: WeightVec) -> WeightVec:
    """Translation by alpha_1/2: b -> b + m/2, d -> d - b - m/4."""
    return WeightVec(v.b + v.m / 2, v.d - v.b - v.m / 4, v.m)


def tau_inv_act(v: WeightVec) -> WeightVec:
    return WeightVec(v.b - v.m / 2, v.d + v.b - v.m / 4, v.m)


def sigma_act(v: WeightVec) -> WeightVec:
    return tau_act(r1_act(v))


def _tau_power(v: WeightVec, j: int) -> WeightVec:
    step = tau_act if j >= 0 else tau_inv_act
    for _ in range(abs(j)):
        v = step(v)
    return v


@dataclass(frozen=True)
class WeylElem:
    """``tau^(2n)`` (flip False) or ``tau^(2n) r_1`` (flip True)."""

    n: int = 0
    flip: bool = False

    @property
    def sign(self) -> int:
        return -1 if self.flip else 1

    def __mul__(self, other: "WeylElem") -> "WeylElem":
        # r1 tau^2k r1 = tau^-2k
        if self.flip:
            return WeylElem(self.n - other.n, not other.flip)
        return WeylElem(self.n + other.n, other.flip)

    def inverse(self) -> "WeylElem":
        if self.flip:
            return self
        return WeylElem(-self.n, False)

    def __repr__(self):
        base = "e" if self.n == 0 else f"tau^{2 * self.n}"
        if self.flip:
            return "r1" if self.n == 0 else base + "*r1"
        return base


def weyl_apply(w: WeylElem, v: WeightVec) -> WeightVec:
    if w.flip:
        v = r1_act(v)
    return _tau_power(v, 2 * w.n)


def dot_action(w: WeylElem, v: WeightVec) -> WeightVec:
    return weyl_apply(w, v + RHO) - RHO


def tau_dot(j: int, v: WeightVec) -> WeightVec:
    """Dot action of ``tau^j`` (an element of the extended affine Weyl group)."""
    return _tau_power(v + RHO, j) - RHO


def index_I(beta: WeightVec, j: int) -> int:
    if not beta.in_root_lattice():
        raise ValueError(f"{beta} is not in the root lattice")
    if beta.b >= 0 and j >= 0:
        return 1
    if beta.b < 0 and j < 0:
        return -1
    return 0


@dataclass(frozen=True)
class StringProblem:
    """Level ``m`` highest weight with ``<Lambda, alpha_1^v> = k`` and the
    dominant weight ``lambda`` with ``<lambda, alpha_1^v> = l`` and ``d = 0``.

    ``A``, ``B`` are the lattice offsets and ``s`` the modular anomaly.
    """

    m: int
    k: int
    l: int
    A: Fraction
    B: Fraction
    s: Fraction
    normalized_from: tuple | None = None

    @property
    def Lam(self) -> WeightVec:
        return WeightVec(Fraction(self.k, 2), 0, self.m)

    @property
    def lam(self) -> WeightVec:
        return WeightVec(Fraction(self.l, 2), 0, self.m)

    def s_of(self, w: WeylElem) -> WeightVec:
        """``w(Lambda + rho) - (lambda + rho)``."""
        return weyl_apply(w, self.Lam + RHO) - (self.lam + RHO)

    def key(self):
        return (self.m, self.k, self.l)


def _validate(m, k, l):
    for name, v in (("m", m), ("k", k), ("l", l)):
        if not isinstance(v, int) or isinstance(v, bool):
            raise ValueError(f"{name} must be an integer")
    if m < 1:
        raise ValueError("level m must be positive")
    if not (0 <= k <= m and 0 <= l <= m):
        raise ValueError("need 0 <= k, l <= m")
    if (k - l) % 2:
        raise ValueError("k and l must have the same parity")


def make_problem(m: int, k: int, l: int) -> StringProblem:
    """Build an instance without the ``B <= A`` normalization."""
    _validate(m, k, l)
    A = Fraction(k + 1, 2 * (m + 2))
    B = Fraction(l, 2 * m)
    s = (m + 2) * A * A - m * B * B - Fraction(1, 8)
    return StringProblem(m, k, l, A, B, s)


def normalize_problem(m: int, k: int, l: int) -> StringProblem:
    """Validate and apply the diagram twist ``(k, l) -> (m-k, m-l)`` if ``B > A``."""
    p = make_problem(m, k, l)
    if p.B > p.A:
        q = make_problem(m, m - k, m - l)
        return StringProblem(q.m, q.k, q.l, q.A, q.B, q.s, normalized_from=(m, k, l))
    return p
