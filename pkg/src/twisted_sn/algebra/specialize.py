"""Evaluation of polynomials and rational functions at points.

Points live in one of three coefficient domains: exact rationals, a prime
field, or a :class:`~.finite.GaloisField`.  :class:`FVal` wraps a domain
element with arithmetic operators so that the same expression code runs
symbolically (on :class:`RatFunc`) and numerically (on ``FVal``).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from numbers import Rational

from .finite import GaloisField, PrimeField
from .poly import MultiPoly
from .ratfunc import RatFunc
from .vartable import MASK


class BadPoint(ZeroDivisionError):
    """A denominator vanished at the sampled point; resample."""


class RationalField:
    """Exact rationals with the finite-field interface."""

    order = None
    characteristic = 0
    zero = 0
    one = 1

    def __repr__(self) -> str:
        return "Q"

    def describe(self) -> str:
        return "Q"

    def from_int(self, n):
        return n

    def from_rational(self, c):
        return c

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1, 1) / x

    def pow(self, x, e: int):
        if e < 0:
            return self.inv(x) ** (-e)
        return x**e

    def random(self, rng):
        return rng.randrange(-1000, 1000)


QQ = RationalField()


class FVal:
    """Domain element with operators; division by zero raises BadPoint."""

    __slots__ = ("F", "v")

    def __init__(self, F, v):
        self.F = F
        self.v = v

    def _o(self, other):
        if isinstance(other, FVal):
            return other.v
        if isinstance(other, (int, Rational)):
            return self.F.from_rational(other)
        return None

    def __add__(self, other):
        o = self._o(other)
        return NotImplemented if o is None else FVal(self.F, self.F.add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._o(other)
        return NotImplemented if o is None else FVal(self.F, self.F.sub(self.v, o))

    def __rsub__(self, other):
        o = self._o(other)
        return NotImplemented if o is None else FVal(self.F, self.F.sub(o, self.v))

    def __neg__(self):
        return FVal(self.F, self.F.neg(self.v))

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._o(other)
        return NotImplemented if o is None else FVal(self.F, self.F.mul(self.v, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        if o == self.F.zero:
            raise BadPoint("division by zero at the sampled point")
        return FVal(self.F, self.F.mul(self.v, self.F.inv(o)))

    def __rtruediv__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        if self.v == self.F.zero:
            raise BadPoint("division by zero at the sampled point")
        return FVal(self.F, self.F.mul(o, self.F.inv(self.v)))

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0 and self.v == self.F.zero:
            raise BadPoint("negative power of zero at the sampled point")
        return FVal(self.F, self.F.pow(self.v, e))

    def __eq__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        return self.v == o

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != self.F.zero

    def __repr__(self):
        return f"FVal({self.v} in {self.F!r})"


@dataclass
class Point:
    """Assignment of domain values to variable names."""

    assignments: dict
    domain: object = dc_field(default=QQ)

    def __getitem__(self, name):
        return self.assignments[name]

    def fvals(self) -> dict[str, FVal]:
        return {k: FVal(self.domain, v) for k, v in self.assignments.items()}

    def as_text(self) -> dict[str, str]:
        return {k: str(v) for k, v in self.assignments.items()}


def _coef_map(ring_p: int, F):
    if ring_p:
        if F.characteristic != ring_p:
            raise ValueError(f"cannot evaluate a characteristic {ring_p} polynomial over {F!r}")
        return F.from_int
    if F.characteristic:
        return F.from_rational
    return lambda c: c


def eval_poly(poly: MultiPoly | dict, pt: Point, ring=None):
    """Value of a polynomial at a point (domain encoding)."""
    if isinstance(poly, MultiPoly):
        ring, d = poly.ring, poly._t
    else:
        d = poly
    F = pt.domain
    vt = ring.vars
    cmap = _coef_map(ring.p, F)
    acc = 0
    present = 0
    for k in d:
        present |= k
    slots = []
    for i, (name, sh) in enumerate(zip(vt.names, vt.shifts)):
        if (present >> sh) & MASK:
            if name in pt.assignments:
                slots.append((sh, pt.assignments[name]))
            elif name == "a" and vt.alpha in pt.assignments:
                al = pt.assignments[vt.alpha]
                slots.append((sh, F.mul(al, al)))
            else:
                raise KeyError(f"point assigns no value to {name!r}")
    powcache: dict = {}
    if isinstance(F, PrimeField):
        p = F.p
        for k, c in d.items():
            t = cmap(c)
            for sh, val in slots:
                e = (k >> sh) & MASK
                if e:
                    key = (sh, e)
                    pw = powcache.get(key)
                    if pw is None:
                        pw = pow(val, e, p)
                        powcache[key] = pw
                    t = t * pw % p
            acc += t
        return acc % p
    acc = F.zero
    for k, c in d.items():
        t = cmap(c)
        for sh, val in slots:
            e = (k >> sh) & MASK
            if e:
                key = (sh, e)
                pw = powcache.get(key)
                if pw is None:
                    pw = F.pow(val, e)
                    powcache[key] = pw
                t = F.mul(t, pw)
        acc = F.add(acc, t)
    return acc


def specialize(e, pt: Point):
    """num(pt)/den(pt); raises BadPoint when den(pt) = 0."""
    if isinstance(e, MultiPoly):
        return eval_poly(e, pt)
    if not isinstance(e, RatFunc):
        raise TypeError(f"cannot specialize {type(e).__name__}")
    F = pt.domain
    d = eval_poly(e._d, pt, e.ring)
    if d == F.zero:
        raise BadPoint("denominator vanishes at the point")
    n = eval_poly(e._n, pt, e.ring)
    return F.mul(n, F.inv(d))


def random_point(names, F, rng, alpha: str | None = None) -> Point:
    """Uniform point; when alpha is given, a is set to alpha**2."""
    vals = {}
    for n in names:
        if n == "a" and alpha is not None:
            continue
        vals[n] = F.random(rng)
    if alpha is not None:
        vals["a"] = F.mul(vals[alpha], vals[alpha])
    return Point(vals, F)


__all__ = [
    "BadPoint",
    "FVal",
    "GaloisField",
    "Point",
    "PrimeField",
    "QQ",
    "RationalField",
    "eval_poly",
    "random_point",
    "specialize",
]
