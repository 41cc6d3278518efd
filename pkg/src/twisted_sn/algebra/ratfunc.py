"""Normalized rational functions over a :class:`PolyRing`.

A ``RatFunc`` stores ``num/den`` with ``gcd(num, den) = 1`` and a canonical
denominator: monic over F_p, and over Q an integer polynomial with content 1
and positive leading coefficient.  Equal field elements therefore have equal
term dicts, which makes ``==`` and ``hash`` cheap.

When the ring carries ``alpha`` (with ``alpha**2 = a``), cancellation is done
after lifting ``a -> alpha**2``; the lifted ring is a polynomial ring, so its
gcd is meaningful, and the canonical form is fixed there before reducing back.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from .gcd import poly_gcd
from .poly import MultiPoly, PolyRing, _add, _divexact, _lift_alpha, _mul, _norm, _reduce_alpha, _scale


def _den_scale(den: dict, p: int):
    """Scalar s making s*den canonical."""
    lc = den[max(den)]
    if p:
        return pow(lc, -1, p)
    L = 1
    for v in den.values():
        if isinstance(v, Fraction):
            L = L * v.denominator // math.gcd(L, v.denominator)
    c = 0
    for v in den.values():
        c = math.gcd(c, int(v * L))
        if c == 1:
            break
    if lc < 0:
        c = -c
    return Fraction(L, c) if L % c else L // c


def _canon(num: dict, den: dict, p: int) -> tuple[dict, dict]:
    s = _den_scale(den, p)
    if s == 1:
        return num, den
    return _scale_q(num, s, p), _scale_q(den, s, p)


def _scale_q(d: dict, s, p: int) -> dict:
    out = _scale(d, s, p)
    if not p and isinstance(s, Fraction):
        out = {k: (v.numerator if isinstance(v, Fraction) and v.denominator == 1 else v) for k, v in out.items()}
    return out


def _cancel(num: dict, den: dict, ring: PolyRing) -> tuple[dict, dict]:
    """Full cancellation plus canonical scaling (no alpha handling)."""
    vt, p = ring.vars, ring.p
    if not num:
        return {}, {0: 1}
    if len(den) == 1 and 0 in den:
        return _canon(num, den, p)
    g = poly_gcd(num, den, vt, p)
    if not (len(g) == 1 and 0 in g):
        num = _divexact(num, g, p, vt.guard)
        den = _divexact(den, g, p, vt.guard)
    return _canon(num, den, p)


def normalize_pair(num: dict, den: dict, ring: PolyRing) -> tuple[dict, dict]:
    if not den:
        raise ZeroDivisionError("rational function with zero denominator")
    if ring.has_alpha:
        vt = ring.vars
        n, d = _cancel(_lift_alpha(num, vt), _lift_alpha(den, vt), ring)
        return _reduce_alpha(n, vt, ring.p), _reduce_alpha(d, vt, ring.p)
    return _cancel(num, den, ring)


class RatFunc:
    """Immutable element of Frac(ring)."""

    __slots__ = ("ring", "_n", "_d", "reduced")

    def __init__(self, num, den=None, *, ring: PolyRing | None = None, _trusted: bool = False,
                 _reduced: bool = True):
        if isinstance(num, MultiPoly):
            ring = num.ring
            n = num._t
        elif ring is None:
            raise TypeError("ring required when num is not a MultiPoly")
        elif isinstance(num, dict):
            n = num
        else:
            n = ring.coerce(num)._t
        if den is None:
            d = {0: 1}
        elif isinstance(den, dict):
            d = den
        else:
            d = ring.coerce(den)._t
        self.ring = ring
        if not _trusted:
            n, d = normalize_pair(n, d, ring)
        elif not d:
            raise ZeroDivisionError("rational function with zero denominator")
        self._n = n
        self._d = d
        self.reduced = _reduced

    @classmethod
    def _make(cls, ring: PolyRing, n: dict, d: dict) -> "RatFunc":
        return cls(n, d, ring=ring, _trusted=True)

    @classmethod
    def unreduced(cls, num: MultiPoly, den: MultiPoly) -> "RatFunc":
        """num/den without gcd cancellation; equality falls back to cross-multiplication."""
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        return cls(num._t, den._t, ring=num.ring, _trusted=True, _reduced=False)

    def normalized(self) -> "RatFunc":
        if self.reduced:
            return self
        return RatFunc(self._n, self._d, ring=self.ring)

    def cancel_factors(self, factors) -> "RatFunc":
        """Strip the given polynomials from num and den as often as they divide both.

        Cheap alternative to a full gcd when the common factors are known in
        advance; the result keeps ``reduced=False``.
        """
        ring = self.ring
        n, d = self._n, self._d
        vt, p = ring.vars, ring.p
        lift = ring.has_alpha
        if lift:
            n, d = _lift_alpha(n, vt), _lift_alpha(d, vt)
        for f in factors:
            ft = _lift_alpha(f._t, vt) if lift else f._t
            while True:
                qn = _divexact(n, ft, p, vt.guard)
                if qn is None:
                    break
                qd = _divexact(d, ft, p, vt.guard)
                if qd is None:
                    break
                n, d = qn, qd
        n, d = _canon(n, d, p)
        if lift:
            n, d = _reduce_alpha(n, vt, p), _reduce_alpha(d, vt, p)
        return RatFunc(n, d, ring=ring, _trusted=True, _reduced=False)

    # -- views -----------------------------------------------------------

    @property
    def num(self) -> MultiPoly:
        return self.ring._make(self._n)

    @property
    def den(self) -> MultiPoly:
        return self.ring._make(self._d)

    @property
    def field(self):
        return self.ring.field

    @property
    def vars(self):
        return self.ring.vars

    def __bool__(self) -> bool:
        return bool(self._n)

    def is_polynomial(self) -> bool:
        return len(self._d) == 1 and 0 in self._d

    def is_constant(self) -> bool:
        return self.is_polynomial() and (not self._n or (len(self._n) == 1 and 0 in self._n))

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        c = self._n.get(0, 0)
        dv = self._d[0]
        if dv == 1:
            return c
        p = self.ring.p
        return c * pow(dv, -1, p) % p if p else Fraction(c) / dv

    def variables(self) -> tuple[str, ...]:
        acc = 0
        for k in self._n:
            acc |= k
        for k in self._d:
            acc |= k
        vt = self.ring.vars
        from .vartable import MASK
        return tuple(v for v, s in zip(vt.names, vt.shifts) if (acc >> s) & MASK)

    def degree_bound(self) -> int:
        """max(total degree of num, total degree of den)."""
        return max(self.num.total_degree(), self.den.total_degree(), 0)

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "RatFunc | None":
        if isinstance(other, RatFunc):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return RatFunc._make(self.ring, other._t, {0: 1})
        if isinstance(other, (int, Rational)):
            c = self.ring.field.coerce(other)
            return RatFunc._make(self.ring, {0: c} if c else {}, {0: 1})
        return None

    def _addsub(self, o: "RatFunc", sign: int) -> "RatFunc":
        ring = self.ring
        p, vt = ring.p, ring.vars
        a, b, c, d = self._n, self._d, o._n, o._d
        if not c:
            return self
        if not a:
            return -o if sign < 0 else o
        if ring.has_alpha or not (self.reduced and o.reduced):
            n = _add(ring._clean(_mul(a, d, p)), ring._clean(_mul(c, b, p)), p, sign)
            return RatFunc(n, ring._clean(_mul(b, d, p)), ring=ring)
        if b == d:
            n = _add(a, c, p, sign)
            return RatFunc(n, b, ring=ring)
        # Henrici: only the gcd of the denominators can cancel against the sum
        g = poly_gcd(b, d, vt, p)
        if len(g) == 1 and 0 in g:
            n = _add(_mul(a, d, p), _mul(c, b, p), p, sign)
            den = _mul(b, d, p)
            n, den = _canon(n, den, p)
            return RatFunc._make(ring, n, den)
        b1 = _divexact(b, g, p, vt.guard)
        d1 = _divexact(d, g, p, vt.guard)
        n = _add(_mul(a, d1, p), _mul(c, b1, p), p, sign)
        if not n:
            return RatFunc._make(ring, {}, {0: 1})
        g2 = poly_gcd(n, g, vt, p)
        if not (len(g2) == 1 and 0 in g2):
            n = _divexact(n, g2, p, vt.guard)
            g = _divexact(g, g2, p, vt.guard)
        den = _mul(_mul(b1, d1, p), g, p)
        n, den = _canon(n, den, p)
        return RatFunc._make(ring, n, den)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._addsub(o, 1)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._addsub(o, -1)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o._addsub(self, -1)

    def __neg__(self):
        return RatFunc(_scale(self._n, -1, self.ring.p), self._d, ring=self.ring, _trusted=True,
                       _reduced=self.reduced)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ring = self.ring
        p, vt = ring.p, ring.vars
        a, b, c, d = self._n, self._d, o._n, o._d
        if not a or not c:
            return RatFunc._make(ring, {}, {0: 1})
        if ring.has_alpha or not (self.reduced and o.reduced):
            return RatFunc(ring._clean(_mul(a, c, p)), ring._clean(_mul(b, d, p)), ring=ring)
        g1 = poly_gcd(a, d, vt, p)
        if not (len(g1) == 1 and 0 in g1):
            a = _divexact(a, g1, p, vt.guard)
            d = _divexact(d, g1, p, vt.guard)
        g2 = poly_gcd(c, b, vt, p)
        if not (len(g2) == 1 and 0 in g2):
            c = _divexact(c, g2, p, vt.guard)
            b = _divexact(b, g2, p, vt.guard)
        n, den = _canon(_mul(a, c, p), _mul(b, d, p), p)
        return RatFunc._make(ring, n, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self._n:
            raise ZeroDivisionError("inverse of zero")
        n, d = _canon(self._d, self._n, self.ring.p)
        return RatFunc(n, d, ring=self.ring, _trusted=True, _reduced=self.reduced)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        ring = self.ring
        if ring.has_alpha:
            num = ring._make(self._n) ** n
            den = ring._make(self._d) ** n
            return RatFunc(num._t, den._t, ring=ring)
        from .poly import _pow
        num = _pow(self._n, n, ring.p)
        den = _pow(self._d, n, ring.p)
        return RatFunc(num, den, ring=ring, _trusted=True, _reduced=self.reduced)

    # -- comparison ------------------------------------------------------

    def equals(self, other) -> bool:
        """Cross-multiplied comparison; sound for unreduced operands too."""
        o = self._coerce(other)
        if o is None:
            return False
        if self._n == o._n and self._d == o._d:
            return True
        ring = self.ring
        p = ring.p
        lhs = ring._clean(_mul(self._n, o._d, p))
        rhs = ring._clean(_mul(o._n, self._d, p))
        return _norm(_add(lhs, rhs, p, -1), p) == {}

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.reduced and o.reduced:
            return self._n == o._n and self._d == o._d
        return self.equals(o)

    def __hash__(self) -> int:
        r = self.normalized()
        return hash((frozenset(r._n.items()), frozenset(r._d.items())))

    # -- calculus ----------------------------------------------------------

    def derivative(self, var: str) -> "RatFunc":
        ring = self.ring
        if ring.has_alpha and var in ("a", ring.vars.alpha):
            raise ValueError("derivative in a or alpha is not defined on the alpha-reduced ring")
        n, d = self.num, self.den
        dn, dd = n.derivative(var), d.derivative(var)
        if not dd:
            return RatFunc(dn._t, d._t, ring=ring)
        return RatFunc((dn * d - n * dd)._t, (d * d)._t, ring=ring)

    # -- printing --------------------------------------------------------

    def __str__(self) -> str:
        n, d = self.num, self.den
        if self.is_polynomial() and self._d[0] == 1:
            return str(n)
        ns = str(n) if len(n) == 1 and not str(n).startswith("-") else f"({n})"
        ds = str(d) if len(d) == 1 and "*" not in str(d) else f"({d})"
        return f"{ns}/{ds}"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def ratfunc(x, ring: PolyRing | None = None) -> RatFunc:
    """Coerce a MultiPoly, RatFunc or scalar into a RatFunc."""
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, MultiPoly):
        return RatFunc._make(x.ring, x._t, {0: 1})
    if ring is None:
        raise TypeError("ring required for scalars")
    c = ring.field.coerce(x)
    return RatFunc._make(ring, {0: c} if c else {}, {0: 1})
