"""Exact truncated series in q and z with Laurent-polynomial coefficients in t.

A :class:`Series3` is a finite sum of monomials ``c * q^a * z^b * t^e`` where
``a`` and ``b`` are exact rationals, ``e`` is an integer and ``c`` is an
arbitrary-precision integer.  Every series carries a truncation bound
``qmax``; terms with ``a > qmax`` are never stored, and the stored data is
understood to be exact up to and including ``q^qmax``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import lcm
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

Rational = Union[int, Fraction]

__all__ = [
    "TPoly",
    "Series3",
    "SeriesError",
    "add",
    "mul",
    "expand_geometric_inverse",
    "ct_poisson",
    "coeff",
    "shift",
    "to_json",
    "from_json",
]


class SeriesError(ValueError):
    """Raised on malformed series operations (bound mismatch, bad exponents)."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


class TPoly:
    """Laurent polynomial in ``t`` with integer coefficients.

    Immutable; zero coefficients are never stored.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    c[int(e)] = int(v)
        self._c: Dict[int, int] = c
        self._hash = None

    @classmethod
    def _raw(cls, c: Dict[int, int]) -> "TPoly":
        # caller guarantees c has no zero values
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def monomial(cls, exp: int = 0, c: int = 1) -> "TPoly":
        return cls({exp: c})

    @property
    def coeffs(self) -> Dict[int, int]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = TPoly({0: other})
        if not isinstance(other, TPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = TPoly({0: other})
        if not isinstance(other, TPoly):
            return NotImplemented
        return TPoly._raw(_padd(self._c, other._c))

    __radd__ = __add__

    def __neg__(self):
        return TPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = TPoly({0: other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return TPoly({e: v * other for e, v in self._c.items()})
        if not isinstance(other, TPoly):
            return NotImplemented
        return TPoly._raw(_pmul(self._c, other._c))

    __rmul__ = __mul__

    def shift(self, dt: int) -> "TPoly":
        """Multiply by ``t^dt``."""
        return TPoly._raw({e + dt: v for e, v in self._c.items()})

    def __call__(self, t):
        return sum(v * t**e for e, v in self._c.items())

    @property
    def min_degree(self):
        return min(self._c) if self._c else None

    @property
    def max_degree(self):
        return max(self._c) if self._c else None

    def __repr__(self):
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items()):
            if e == 0:
                mono = str(abs(v))
            else:
                tt = "t" if e == 1 else f"t^{e}"
                mono = tt if abs(v) == 1 else f"{abs(v)}*{tt}"
            sign = "-" if v < 0 else "+"
            parts.append((sign, mono))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out


def _padd(a: Dict[int, int], b: Dict[int, int]) -> Dict[int, int]:
    out = dict(a)
    for e, v in b.items():
        s = out.get(e, 0) + v
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _pmul(a: Dict[int, int], b: Dict[int, int]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for e1, v1 in a.items():
        for e2, v2 in b.items():
            e = e1 + e2
            out[e] = out.get(e, 0) + v1 * v2
    return {e: v for e, v in out.items() if v}


def _iadd_layer(dst: Dict, key, poly: Dict[int, int]) -> None:
    cur = dst.get(key)
    if cur is None:
        if poly:
            dst[key] = dict(poly)
        return
    s = _padd(cur, poly)
    if s:
        dst[key] = s
    else:
        del dst[key]


Term = Tuple[Fraction, Fraction, int, int]


class Series3:
    """Truncated series ``sum c q^a z^b t^e``.

    Internally ``{q_exp: {z_exp: {t_exp: coeff}}}``, always pruned, so two
    series are equal exactly when their stored data and ``qmax`` agree.
    """

    __slots__ = ("_d", "qmax")

    def __init__(self, qmax: Rational, data=None):
        self.qmax = _frac(qmax)
        d: Dict[Fraction, Dict[Fraction, Dict[int, int]]] = {}
        if data:
            for qe, layer in data.items():
                qe = _frac(qe)
                if qe > self.qmax:
                    continue
                for ze, poly in layer.items():
                    if isinstance(poly, TPoly):
                        poly = poly._c
                    poly = {int(e): int(v) for e, v in poly.items() if v}
                    if poly:
                        _iadd_layer(d.setdefault(qe, {}), _frac(ze), poly)
                if qe in d and not d[qe]:
                    del d[qe]
        self._d = d

    @classmethod
    def _wrap(cls, qmax: Fraction, d) -> "Series3":
        s = cls.__new__(cls)
        s.qmax = qmax
        s._d = d
        return s

    # constructors

    @classmethod
    def zero(cls, qmax: Rational) -> "Series3":
        return cls(qmax)

    @classmethod
    def one(cls, qmax: Rational) -> "Series3":
        return cls.monomial(qmax)

    @classmethod
    def monomial(cls, qmax: Rational, q: Rational = 0, z: Rational = 0,
                 t: int = 0, c: int = 1) -> "Series3":
        return cls(qmax, {q: {z: {t: c}}})

    @classmethod
    def from_terms(cls, qmax: Rational, terms: Iterable) -> "Series3":
        """Build from ``(q, z, t, c)`` tuples; repeated monomials accumulate."""
        qmax = _frac(qmax)
        d: Dict = {}
        for q, z, t, c in terms:
            q = _frac(q)
            if q > qmax or not c:
                continue
            layer = d.setdefault(q, {})
            _iadd_layer(layer, _frac(z), {int(t): int(c)})
            if not layer:
                del d[q]
        return cls._wrap(qmax, d)

    # inspection

    def terms(self) -> Iterator[Term]:
        """Yield ``(q, z, t, c)`` sorted ascending by ``(q, z, t)``."""
        for q in sorted(self._d):
            layer = self._d[q]
            for z in sorted(layer):
                for e, c in sorted(layer[z].items()):
                    yield q, z, e, c

    def q_exponents(self):
        return sorted(self._d)

    def coeff(self, q_exp: Rational) -> Dict[Fraction, TPoly]:
        layer = self._d.get(_frac(q_exp), {})
        return {z: TPoly(p) for z, p in sorted(layer.items())}

    def is_zero(self) -> bool:
        return not self._d

    def is_z_free(self) -> bool:
        return all(set(layer) <= {0} for layer in self._d.values())

    def z_free_coeffs(self) -> Dict[Fraction, TPoly]:
        """``{q_exp: TPoly}`` for a series with no z-dependence."""
        if not self.is_z_free():
            raise SeriesError("series has nonzero z-exponents")
        return {q: TPoly(layer[Fraction(0)]) for q, layer in sorted(self._d.items())}

    def collapse(self, t: int = 1) -> Dict[Fraction, int]:
        """Specialize ``z = 1`` and ``t`` to an integer; return ``{q_exp: value}``."""
        out = {}
        for q, layer in self._d.items():
            v = 0
            for poly in layer.values():
                for e, c in poly.items():
                    v += c * Fraction(t) ** e
            if v:
                out[q] = v
        return dict(sorted(out.items()))

    def __len__(self):
        return sum(len(p) for layer in self._d.values() for p in layer.values())

    def __eq__(self, other):
        if not isinstance(other, Series3):
            return NotImplemented
        return self.qmax == other.qmax and self._d == other._d

    def __repr__(self):
        if not self._d:
            return f"0 + O(q^{self.qmax})"
        parts = []
        for q, z, e, c in self.terms():
            mono = [str(c)]
            if q:
                mono.append(f"q^({q})")
            if z:
                mono.append(f"z^({z})")
            if e:
                mono.append(f"t^{e}")
            parts.append("*".join(mono))
        return " + ".join(parts) + f" + O(q^>{self.qmax})"

    # arithmetic

    def _check(self, other: "Series3"):
        if not isinstance(other, Series3):
            raise TypeError("Series3 expected")
        if other.qmax != self.qmax:
            raise SeriesError(f"truncation bounds differ: {self.qmax} vs {other.qmax}")

    def __add__(self, other):
        self._check(other)
        d = {q: {z: dict(p) for z, p in layer.items()} for q, layer in self._d.items()}
        for q, layer in other._d.items():
            dl = d.setdefault(q, {})
            for z, p in layer.items():
                _iadd_layer(dl, z, p)
            if not dl:
                del d[q]
        return Series3._wrap(self.qmax, d)

    def __neg__(self):
        return Series3._wrap(self.qmax, {
            q: {z: {e: -c for e, c in p.items()} for z, p in layer.items()}
            for q, layer in self._d.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int | TPoly) -> "Series3":
        if isinstance(c, int):
            c = TPoly({0: c})
        d = {}
        for q, layer in self._d.items():
            nl = {}
            for z, p in layer.items():
                prod = _pmul(p, c._c)
                if prod:
                    nl[z] = prod
            if nl:
                d[q] = nl
        return Series3._wrap(self.qmax, d)

    def __mul__(self, other):
        if isinstance(other, (int, TPoly)):
            return self.scale(other)
        self._check(other)
        qmax = self.qmax
        # integer exponent keys for the inner loop
        qden = lcm(*(q.denominator for q in self._d), *(q.denominator for q in other._d), 1)
        zden = lcm(*(z.denominator for l in self._d.values() for z in l),
                   *(z.denominator for l in other._d.values() for z in l), 1)

        def ints(s):
            return sorted(
                (int(q * qden), [(int(z * zden), p) for z, p in layer.items()])
                for q, layer in s._d.items())

        a, b = ints(self), ints(other)
        qlim = qmax * qden
        acc: Dict[int, Dict[int, Dict[int, int]]] = {}
        for qa, la in a:
            for qb, lb in b:
                if qa + qb > qlim:
                    break
                dst = acc.setdefault(qa + qb, {})
                for za, pa in la:
                    for zb, pb in lb:
                        cell = dst.setdefault(za + zb, {})
                        for e1, v1 in pa.items():
                            for e2, v2 in pb.items():
                                e = e1 + e2
                                cell[e] = cell.get(e, 0) + v1 * v2
        d = {}
        for qi, layer in acc.items():
            nl = {}
            for zi, p in layer.items():
                p = {e: v for e, v in p.items() if v}
                if p:
                    nl[Fraction(zi, zden)] = p
            if nl:
                d[Fraction(qi, qden)] = nl
        return Series3._wrap(qmax, d)

    __rmul__ = __mul__

    def shift(self, dq: Rational = 0, dz: Rational = 0, dt: int = 0,
              rebound: bool = False) -> "Series3":
        """Multiply by ``q^dq z^dz t^dt``.

        With ``rebound=True`` the truncation bound moves by ``dq`` as well,
        which is the exact statement after multiplying by a monomial.
        Otherwise the bound is kept and terms pushed above it are dropped.
        """
        dq, dz = _frac(dq), _frac(dz)
        qmax = self.qmax + dq if rebound else self.qmax
        d = {}
        for q, layer in self._d.items():
            nq = q + dq
            if nq > qmax:
                continue
            d[nq] = {z + dz: ({e + dt: c for e, c in p.items()} if dt else dict(p))
                     for z, p in layer.items()}
        return Series3._wrap(qmax, d)

    def truncate(self, qmax: Rational) -> "Series3":
        """Lower the truncation bound."""
        qmax = _frac(qmax)
        if qmax > self.qmax:
            raise SeriesError("cannot raise the truncation bound of a truncated series")
        return Series3._wrap(qmax, {q: {z: dict(p) for z, p in l.items()}
                                    for q, l in self._d.items() if q <= qmax})

    def ct_poisson(self) -> "Series3":
        """Constant term of ``P_t * self`` with ``P_t = sum_n t^|n| z^n``."""
        d = {}
        for q, layer in self._d.items():
            acc: Dict[int, int] = {}
            for z, p in layer.items():
                if z.denominator != 1:
                    raise SeriesError(f"non-integer z-exponent {z} at q^{q}")
                w = abs(int(z))
                for e, c in p.items():
                    acc[e + w] = acc.get(e + w, 0) + c
            acc = {e: c for e, c in acc.items() if c}
            if acc:
                d[q] = {Fraction(0): acc}
        return Series3._wrap(self.qmax, d)

    def to_records(self):
        out = []
        for q in sorted(self._d):
            for z in sorted(self._d[q]):
                out.append({
                    "q": _fstr(q),
                    "z": _fstr(z),
                    "t_poly": [[e, str(c)] for e, c in sorted(self._d[q][z].items())],
                })
        return out


def _fstr(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# functional surface


def add(a: Series3, b: Series3) -> Series3:
    return a + b


def mul(a: Series3, b: Series3) -> Series3:
    return a * b


def expand_geometric_inverse(qmax: Rational, q: Rational, z: Rational = 0,
                             t: int = 0, c: int = 1) -> Series3:
    """``1 / (1 - c q^q z^z t^t)`` expanded up to ``q^qmax``; needs ``q > 0``."""
    q, z, qmax = _frac(q), _frac(z), _frac(qmax)
    if q <= 0:
        raise SeriesError("geometric expansion needs a strictly positive q-exponent")
    terms = []
    k = 0
    while k * q <= qmax:
        terms.append((k * q, k * z, k * t, c**k))
        k += 1
    return Series3.from_terms(qmax, terms)


def ct_poisson(x: Series3) -> Series3:
    return x.ct_poisson()


def coeff(x: Series3, q_exp: Rational) -> Dict[Fraction, TPoly]:
    return x.coeff(q_exp)


def shift(x: Series3, dq: Rational = 0, dz: Rational = 0, dt: int = 0,
          rebound: bool = False) -> Series3:
    return x.shift(dq, dz, dt, rebound=rebound)


def to_json(x: Series3, **kw) -> str:
    return json.dumps(x.to_records(), **kw)


def from_json(text: str, qmax: Rational) -> Series3:
    terms = []
    for rec in json.loads(text):
        for e, c in rec["t_poly"]:
            terms.append((Fraction(rec["q"]), Fraction(rec["z"]), int(e), int(c)))
    return Series3.from_terms(qmax, terms)
