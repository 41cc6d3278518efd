"""Sparse multivariate polynomials over Q or F_p.

Terms live in a plain ``dict`` mapping packed monomial keys (see
:mod:`.vartable`) to nonzero coefficients.  The module-level ``_``-prefixed
helpers work on those raw dicts so the GCD code can reuse them without
wrapping every intermediate value.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from numbers import Rational

from .fields import CoeffField
from .vartable import MASK, VarTable

# -- raw dict helpers ---------------------------------------------------------


def _norm(d: dict, p: int) -> dict:
    if p:
        return {k: c % p for k, c in d.items() if c % p}
    return {k: c for k, c in d.items() if c}


def _add(a: dict, b: dict, p: int, sign: int = 1) -> dict:
    r = dict(a)
    get = r.get
    if sign == 1:
        for k, c in b.items():
            r[k] = get(k, 0) + c
    else:
        for k, c in b.items():
            r[k] = get(k, 0) - c
    return _norm(r, p)


def _scale(a: dict, c, p: int) -> dict:
    if p:
        c %= p
        return {k: v * c % p for k, v in a.items()} if c else {}
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def _shift(a: dict, key: int) -> dict:
    return {k + key: c for k, c in a.items()}


def _mul(a: dict, b: dict, p: int) -> dict:
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        (kb, cb), = b.items()
        r = {k + kb: c * cb for k, c in a.items()}
        return _norm(r, p) if p else r
    r: dict = {}
    get = r.get
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            r[k] = get(k, 0) + ca * cb
    return _norm(r, p)


def _pow(a: dict, n: int, p: int) -> dict:
    if n < 0:
        raise ValueError("negative polynomial power")
    result = {0: 1}
    base = a
    while n:
        if n & 1:
            result = _mul(result, base, p)
        n >>= 1
        if n:
            base = _mul(base, base, p)
    return result


def _cdiv(a, b, p: int):
    """Exact coefficient quotient in Q or F_p."""
    if p:
        return a * pow(b, -1, p) % p
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        if not r:
            return q
        return Fraction(a, b)
    q = Fraction(a) / b
    return q.numerator if q.denominator == 1 else q


def _lead(d: dict) -> int:
    return max(d)


def _divexact(f: dict, g: dict, p: int, guard: int) -> dict | None:
    """Quotient f/g if g divides f exactly, else None (heap-based sparse division)."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if not f:
        return {}
    lk = max(g)
    lc = g[lk]
    rest = [(k, c) for k, c in g.items() if k != lk]
    if not rest:
        if p:
            inv = pow(lc, -1, p)
            out = {}
            for k, c in f.items():
                if ((k | guard) - lk) & guard != guard:
                    return None
                out[k - lk] = c * inv % p
            return out
        out = {}
        for k, c in f.items():
            if ((k | guard) - lk) & guard != guard:
                return None
            out[k - lk] = _cdiv(c, lc, 0)
        return out
    inv = pow(lc, -1, p) if p else None
    r = dict(f)
    heap = [-k for k in r]
    heapq.heapify(heap)
    q = {}
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        k = -pop(heap)
        c = r.pop(k, 0)
        if p:
            c %= p
        if not c:
            continue
        if ((k | guard) - lk) & guard != guard:
            return None
        qk = k - lk
        if p:
            qc = c * inv % p
        else:
            qc = _cdiv(c, lc, 0)
        q[qk] = qc
        for gk, gc in rest:
            nk = qk + gk
            if nk in r:
                r[nk] -= qc * gc
            else:
                r[nk] = -qc * gc
                push(heap, -nk)
    return q


def _reduce_alpha(d: dict, vt: VarTable, p: int) -> dict:
    """Rewrite alpha^(2q+r) as a^q alpha^r."""
    ia = vt.alpha_index
    sh = vt.shifts[ia]
    if not any((k >> sh) & MASK >= 2 for k in d):
        return d
    ua = vt.units[ia]
    upar = vt.units[vt.index["a"]]
    r: dict = {}
    get = r.get
    for k, c in d.items():
        e = (k >> sh) & MASK
        if e >= 2:
            q = e >> 1
            k = k - 2 * q * ua + q * upar
        r[k] = get(k, 0) + c
    return _norm(r, p)


def _lift_alpha(d: dict, vt: VarTable) -> dict:
    """Inverse of alpha reduction: substitute a = alpha^2 (a ring isomorphism)."""
    ipar = vt.index["a"]
    sh = vt.shifts[ipar]
    ua = vt.units[vt.alpha_index]
    upar = vt.units[ipar]
    r = {}
    for k, c in d.items():
        q = (k >> sh) & MASK
        if q:
            k = k - q * upar + 2 * q * ua
        r[k] = c
    return r


# -- rings and polynomials -----------------------------------------------------


class PolyRing:
    """A coefficient field together with an ordered variable table."""

    def __init__(self, field: CoeffField, vars, alpha: str | None = None):
        if not isinstance(vars, VarTable):
            vars = VarTable(vars, alpha)
        elif alpha is not None and alpha != vars.alpha:
            raise ValueError("alpha given twice with different values")
        if field.has_parameter_a:
            if not vars.names or vars.names[-1] != "a":
                raise ValueError("with the parameter a, 'a' must be the last variable")
        elif "a" in vars:
            raise ValueError("'a' is reserved for the parameter; field has no parameter")
        self.field = field
        self.vars = vars
        self.p = field.characteristic

    def __eq__(self, other) -> bool:
        return self is other or (
            isinstance(other, PolyRing) and self.field == other.field and self.vars == other.vars
        )

    def __hash__(self) -> int:
        return hash((self.field, self.vars))

    def __repr__(self) -> str:
        return f"PolyRing({self.field}, {list(self.vars.names)})"

    @property
    def has_alpha(self) -> bool:
        return self.vars.alpha is not None

    def _make(self, d: dict) -> "MultiPoly":
        return MultiPoly(self, d, _trusted=True)

    def _clean(self, d: dict) -> dict:
        if self.vars.alpha is not None:
            return _reduce_alpha(d, self.vars, self.p)
        return d

    @property
    def zero(self) -> "MultiPoly":
        return self._make({})

    @property
    def one(self) -> "MultiPoly":
        return self._make({0: 1})

    def const(self, c) -> "MultiPoly":
        c = self.field.coerce(c)
        return self._make({0: c} if c else {})

    def gen(self, name: str) -> "MultiPoly":
        try:
            i = self.vars.index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None
        return self._make({self.vars.units[i]: 1})

    def gens(self) -> tuple["MultiPoly", ...]:
        return tuple(self.gen(v) for v in self.vars.names)

    def from_dict(self, terms: dict, reduce: bool = True) -> "MultiPoly":
        """Build from ``{exponent tuple: coefficient}``."""
        d: dict = {}
        for exps, c in terms.items():
            k = self.vars.pack(exps)
            d[k] = d.get(k, 0) + self.field.coerce(c)
        d = _norm(d, self.p)
        if reduce:
            d = self._clean(d)
        return MultiPoly(self, d, _trusted=True, _raw=not reduce)

    def coerce(self, x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            if x.ring != self:
                raise ValueError(f"ring mismatch: {x.ring} vs {self}")
            return x
        if isinstance(x, (int, Rational)):
            return self.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self}")


class MultiPoly:
    """Immutable sparse polynomial; see :class:`PolyRing`."""

    __slots__ = ("ring", "_t", "_raw")

    def __init__(self, ring: PolyRing, terms: dict | None = None, *, _trusted=False, _raw=False):
        self.ring = ring
        if terms is None:
            terms = {}
        elif not _trusted:
            terms = _norm({k: ring.field.coerce(c) for k, c in terms.items()}, ring.p)
            terms = ring._clean(terms)
        self._t = terms
        self._raw = _raw

    # -- views -----------------------------------------------------------

    @property
    def field(self) -> CoeffField:
        return self.ring.field

    @property
    def vars(self) -> VarTable:
        return self.ring.vars

    @property
    def terms(self) -> dict[tuple[int, ...], object]:
        """Exponent tuple -> coefficient, in descending graded-lex order."""
        up = self.ring.vars.unpack
        return {up(k): self._t[k] for k in sorted(self._t, reverse=True)}

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._t.get(0, 0)

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    @property
    def leading_key(self) -> int:
        return max(self._t)

    def leading_coefficient(self):
        return self._t[max(self._t)] if self._t else 0

    def total_degree(self) -> int:
        if not self._t:
            return -1
        return VarTable.degree_of(max(self._t), len(self.ring.vars))

    def degree(self, var: str | None = None) -> int:
        if var is None:
            return self.total_degree()
        if not self._t:
            return -1
        vt = self.ring.vars
        sh = vt.shifts[vt.index[var]]
        return max((k >> sh) & MASK for k in self._t)

    def variables(self) -> tuple[str, ...]:
        acc = 0
        for k in self._t:
            acc |= k
        vt = self.ring.vars
        return tuple(v for v, s in zip(vt.names, vt.shifts) if (acc >> s) & MASK)

    # -- arithmetic ------------------------------------------------------

    def _other(self, other) -> dict | None:
        if isinstance(other, MultiPoly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other._t
        if isinstance(other, (int, Rational)):
            c = self.ring.field.coerce(other)
            return {0: c} if c else {}
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.ring._make(_add(self._t, o, self.ring.p))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.ring._make(_add(self._t, o, self.ring.p, -1))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.ring._make(_add(o, self._t, self.ring.p, -1))

    def __neg__(self):
        return self.ring._make(_scale(self._t, -1, self.ring.p))

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        ring = self.ring
        return ring._make(ring._clean(_mul(self._t, o, ring.p)))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        ring = self.ring
        if not ring.has_alpha:
            return ring._make(_pow(self._t, n, ring.p))
        if n < 0:
            raise ValueError("negative polynomial power")
        result, base = {0: 1}, self._t
        while n:
            if n & 1:
                result = ring._clean(_mul(result, base, ring.p))
            n >>= 1
            if n:
                base = ring._clean(_mul(base, base, ring.p))
        return ring._make(result)

    def __truediv__(self, other):
        # only division by scalars stays inside the polynomial ring
        if isinstance(other, MultiPoly):
            if other.is_constant() and other:
                other = other.constant_value()
            else:
                return NotImplemented
        if isinstance(other, (int, Rational)):
            c = self.ring.field.coerce(other)
            if not c:
                raise ZeroDivisionError("division by zero")
            return self.ring._make(_scale(self._t, self.ring.field.inv(c), self.ring.p))
        return NotImplemented

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """Quotient self/other, raising ValueError when other does not divide self."""
        q = self.try_div(other)
        if q is None:
            raise ValueError("polynomial division is not exact")
        return q

    def try_div(self, other: "MultiPoly") -> "MultiPoly | None":
        o = self._other(other)
        ring = self.ring
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        if ring.has_alpha:
            vt = ring.vars
            q = _divexact(_lift_alpha(self._t, vt), _lift_alpha(o, vt), ring.p, vt.guard)
            return None if q is None else ring._make(_reduce_alpha(q, vt, ring.p))
        q = _divexact(self._t, o, ring.p, ring.vars.guard)
        return None if q is None else ring._make(q)

    def __eq__(self, other) -> bool:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self._t == o

    def __hash__(self) -> int:
        return hash(frozenset(self._t.items()))

    # -- calculus & manipulation -------------------------------------------

    def derivative(self, var: str) -> "MultiPoly":
        vt = self.ring.vars
        if var not in vt.index:
            raise KeyError(f"unknown variable {var!r}")
        i = vt.index[var]
        sh, u = vt.shifts[i], vt.units[i]
        d = {}
        for k, c in self._t.items():
            e = (k >> sh) & MASK
            if e:
                d[k - u] = c * e
        return self.ring._make(_norm(d, self.ring.p))

    def coefficients_in(self, var: str) -> dict[int, "MultiPoly"]:
        """Split as sum_k c_k * var^k, returning {k: c_k}."""
        vt = self.ring.vars
        i = vt.index[var]
        sh, u = vt.shifts[i], vt.units[i]
        out: dict[int, dict] = {}
        for k, c in self._t.items():
            e = (k >> sh) & MASK
            out.setdefault(e, {})[k - e * u] = c
        return {e: self.ring._make(d) for e, d in sorted(out.items())}

    def rename(self, target: PolyRing, mapping: dict[str, str] | None = None) -> "MultiPoly":
        """Move into another ring by variable name (optionally renamed)."""
        src, dst = self.ring.vars, target.vars
        mapping = mapping or {}
        idx = []
        for v in src.names:
            w = mapping.get(v, v)
            idx.append(dst.index.get(w))
        acc = 0
        for k in self._t:
            acc |= k
        for i, s in enumerate(src.shifts):
            if idx[i] is None and (acc >> s) & MASK:
                raise KeyError(f"variable {src.names[i]!r} has no image in {dst}")
        d: dict = {}
        units = dst.units
        shifts = src.shifts
        coerce = target.field.coerce
        for k, c in self._t.items():
            nk = 0
            for i, s in enumerate(shifts):
                e = (k >> s) & MASK
                if e:
                    nk += e * units[idx[i]]
            d[nk] = d.get(nk, 0) + coerce(c)
        d = _norm(d, target.p)
        return target._make(target._clean(d))

    def evaluate(self, values: dict):
        """Substitute constants for some variables; returns a MultiPoly."""
        vt = self.ring.vars
        ring = self.ring
        p = ring.p
        slots = []
        for name, val in values.items():
            i = vt.index[name]
            slots.append((vt.shifts[i], vt.units[i], ring.field.coerce(val)))
        d: dict = {}
        for k, c in self._t.items():
            for sh, u, val in slots:
                e = (k >> sh) & MASK
                if e:
                    k -= e * u
                    c = c * (pow(val, e, p) if p else val**e)
            d[k] = d.get(k, 0) + c
        d = _norm(d, p)
        return ring._make(ring._clean(d))

    def reduce_alpha(self) -> "MultiPoly":
        if not self.ring.has_alpha:
            raise ValueError("ring has no alpha variable")
        return self.ring._make(_reduce_alpha(self._t, self.ring.vars, self.ring.p))

    # -- printing --------------------------------------------------------

    def __str__(self) -> str:
        if not self._t:
            return "0"
        names = self.ring.vars.names
        up = self.ring.vars.unpack
        p = self.ring.p
        parts = []
        for k in sorted(self._t, reverse=True):
            c = self._t[k]
            if p and c > p // 2 and p > 2:
                c -= p
            mono = "*".join(
                (n if e == 1 else f"{n}**{e}") for n, e in zip(names, up(k)) if e
            )
            neg = c < 0
            c = -c if neg else c
            if not mono:
                body = str(c)
            elif c == 1:
                body = mono
            else:
                body = f"{c}*{mono}"
            parts.append(("- " if neg else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self) -> str:
        return f"MultiPoly({self})"
