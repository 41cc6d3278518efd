"""Frames: named definitions and homs over a free set of base variables.

A :class:`Frame` lists its base variables, an ordered dictionary of
definitions (expression strings in Python syntax, or :class:`Builtin`
values for constructions too large to write as text) and a set of homs
given by the images of the base variables.  Homs are applied inside
expressions with call syntax, e.g. ``"tau(G/H)"``.

The same definitions are interpreted by three contexts:

* :class:`SymbolicContext` builds exact :class:`RatFunc` values;
* :class:`NumericContext` evaluates at a point of a finite field, applying
  a hom by pulling the point back along its images;
* :class:`DegContext` propagates (numerator, denominator) degree bounds, used
  for the Schwartz-Zippel error estimate.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable

from ..algebra.fields import CoeffField
from ..algebra.hom import FieldHom, substitute
from ..algebra.parse import ExprError, evaluate, names_in, parse_expr
from ..algebra.poly import PolyRing
from ..algebra.ratfunc import RatFunc, ratfunc
from ..algebra.specialize import BadPoint, FVal


class FrameError(ValueError):
    pass


@dataclass(frozen=True)
class Builtin:
    """A definition computed by code rather than by an expression string.

    ``symbolic(ctx)`` returns a RatFunc, ``numeric(ctx)`` an FVal, and
    ``degree`` bounds (numerator, denominator) total degree in the frame's
    sampled variables.
    """

    symbolic: Callable
    numeric: Callable
    degree: tuple[int, int]
    description: str = ""


@dataclass(frozen=True)
class Claim:
    """An expected identity ``lhs == rhs`` between frame expressions.

    ``table`` groups claims that transcribe one displayed table or relation.
    """

    label: str
    lhs: str
    rhs: str = "0"
    table: str = ""
    note: str = ""


@dataclass(frozen=True)
class HomSpec:
    """Images of base variables as expression strings; unlisted variables are fixed.

    ``alpha_sign`` is the action on the square root of ``a`` (``-1`` for the
    Galois involution).  ``automorphism`` enables the monomial fast path of
    :func:`substitute` and must only be set for genuine automorphisms.
    """

    images: dict
    alpha_sign: int | None = None
    automorphism: bool = False
    description: str = ""


@dataclass
class Frame:
    name: str
    base: tuple
    char: int = 0
    with_a: bool = True
    alpha: str | None = None
    defs: dict = dc_field(default_factory=dict)
    homs: dict = dc_field(default_factory=dict)
    claims: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)

    def __post_init__(self):
        self.base = tuple(self.base)
        if self.alpha is not None and not self.with_a:
            raise FrameError("a frame with alpha needs the parameter a")
        names = list(self.base) + ([self.alpha] if self.alpha else []) + (["a"] if self.with_a else [])
        if len(set(names)) != len(names):
            raise FrameError(f"duplicate base names in frame {self.name}")
        self._ring = None
        self._sym = None

    @property
    def ring(self) -> PolyRing:
        if self._ring is None:
            names = list(self.base) + ([self.alpha] if self.alpha else []) + (["a"] if self.with_a else [])
            self._ring = PolyRing(CoeffField(self.char, self.with_a), names, alpha=self.alpha)
        return self._ring

    @property
    def ring_names(self) -> tuple:
        return self.ring.vars.names

    @property
    def sample_names(self) -> tuple:
        """Variables that receive independent random values at a point."""
        out = list(self.base)
        if self.alpha:
            out.append(self.alpha)
        elif self.with_a:
            out.append("a")
        return tuple(out)

    def define(self, name: str, value) -> "Frame":
        if name in self.defs or name in self.ring_names:
            raise FrameError(f"{name!r} already defined in frame {self.name}")
        if isinstance(value, str):
            parse_expr(value)
        self.defs[name] = value
        self._sym = None
        return self

    def add_hom(self, name: str, images: dict, **kw) -> "Frame":
        for v in images:
            if v not in self.base:
                raise FrameError(f"hom {name}: {v!r} is not a base variable of {self.name}")
        self.homs[name] = HomSpec(dict(images), **kw)
        self._sym = None
        return self

    def claim(self, label: str, lhs: str, rhs: str = "0", table: str = "", note: str = "") -> "Frame":
        parse_expr(lhs)
        parse_expr(rhs)
        if any(c.label == label for c in self.claims):
            raise FrameError(f"duplicate claim label {label!r} in frame {self.name}")
        self.claims.append(Claim(label, lhs, rhs, table, note))
        return self

    def table(self, table: str, hom: str, entries: dict, note: str = "") -> "Frame":
        """Claims ``hom(name) == image`` for each entry, all in one table."""
        for name, img in entries.items():
            self.claim(f"{hom}({name})", f"{hom}({name})", img, table, note)
        return self

    def known(self, name: str) -> bool:
        return name in self.defs or name in self.ring_names

    def symbolic(self) -> "SymbolicContext":
        if self._sym is None:
            self._sym = SymbolicContext(self)
        return self._sym

    def dump(self, names=None) -> str:
        """Deterministic ``name = normalized expression`` listing."""
        ctx = self.symbolic()
        lines = []
        for name in names or self.defs:
            d = self.defs[name]
            if isinstance(d, Builtin) and names is None:
                lines.append(f"{name} = <{d.description or 'builtin'}>")
                continue
            val = ctx.lookup(name)
            if isinstance(val, RatFunc):
                val = val.normalized()
            lines.append(f"{name} = {val}")
        return "\n".join(lines)


# -- symbolic ---------------------------------------------------------------------------


class SymbolicContext:
    def __init__(self, frame: Frame):
        self.frame = frame
        self.ring = frame.ring
        self.cache: dict = {}
        self.homs: dict = {}
        self._busy: set = set()

    def lookup(self, name: str):
        if name in self.cache:
            return self.cache[name]
        fr = self.frame
        if name in fr.ring_names:
            val = ratfunc(self.ring.gen(name))
        elif name in fr.defs:
            if name in self._busy:
                raise FrameError(f"circular definition of {name!r}")
            self._busy.add(name)
            try:
                d = fr.defs[name]
                val = d.symbolic(self) if isinstance(d, Builtin) else evaluate(d, self)
            finally:
                self._busy.discard(name)
        else:
            raise ExprError(f"unknown name {name!r} in frame {fr.name}")
        self.cache[name] = val
        return val

    def value(self, expr) -> RatFunc:
        return ratfunc(evaluate(expr, self), self.ring)

    def hom(self, name: str) -> FieldHom:
        h = self.homs.get(name)
        if h is None:
            spec = self.frame.homs.get(name)
            if spec is None:
                raise ExprError(f"unknown hom {name!r} in frame {self.frame.name}")
            imgs = {v: self.value(t) for v, t in spec.images.items()}
            h = FieldHom(self.ring, self.ring, imgs, label=name,
                         extension_action=spec.alpha_sign, automorphism=spec.automorphism)
            self.homs[name] = h
        return h

    def apply(self, hom: str, node):
        val = evaluate(node, self)
        if not isinstance(val, RatFunc):
            return val
        return substitute(val, self.hom(hom))


# -- numeric ----------------------------------------------------------------------------


class NumericContext:
    """Values at one point; ``values`` maps every sampled variable to an FVal."""

    def __init__(self, frame: Frame, F, values: dict):
        self.frame = frame
        self.F = F
        self.values = dict(values)
        if frame.with_a and "a" not in self.values:
            al = self.values[frame.alpha]
            self.values["a"] = al * al
        self.cache: dict = {}
        self.pulled: dict = {}
        self._busy: set = set()

    def wrap(self, x) -> FVal:
        if isinstance(x, FVal):
            return x
        return FVal(self.F, self.F.from_rational(x) if isinstance(x, Fraction) else self.F.from_int(x))

    def lookup(self, name: str):
        if name in self.values:
            return self.values[name]
        if name in self.cache:
            return self.cache[name]
        fr = self.frame
        if name not in fr.defs:
            raise ExprError(f"unknown name {name!r} in frame {fr.name}")
        if name in self._busy:
            raise FrameError(f"circular definition of {name!r}")
        self._busy.add(name)
        try:
            d = fr.defs[name]
            val = d.numeric(self) if isinstance(d, Builtin) else evaluate(d, self)
        finally:
            self._busy.discard(name)
        self.cache[name] = val
        return val

    def value(self, expr) -> FVal:
        return self.wrap(evaluate(expr, self))

    def pullback(self, hom: str) -> "NumericContext":
        ctx = self.pulled.get(hom)
        if ctx is None:
            spec = self.frame.homs.get(hom)
            if spec is None:
                raise ExprError(f"unknown hom {hom!r} in frame {self.frame.name}")
            vals = {}
            for v in self.frame.base:
                vals[v] = self.value(spec.images[v]) if v in spec.images else self.values[v]
            if self.frame.alpha:
                al = self.values[self.frame.alpha]
                vals[self.frame.alpha] = -al if spec.alpha_sign == -1 else al
            elif self.frame.with_a:
                vals["a"] = self.values["a"]
            ctx = NumericContext(self.frame, self.F, vals)
            self.pulled[hom] = ctx
        return ctx

    def apply(self, hom: str, node):
        return self.pullback(hom).value(node)


# -- degree bounds ----------------------------------------------------------------------


@dataclass(frozen=True)
class DegBound:
    """Bounds on total degree of some numerator and denominator representation."""

    n: int
    d: int

    @staticmethod
    def of(x) -> "DegBound":
        return x if isinstance(x, DegBound) else DegBound(0, 0)

    def __add__(self, o):
        o = DegBound.of(o)
        return DegBound(max(self.n + o.d, o.n + self.d), self.d + o.d)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __pos__(self):
        return self

    def __mul__(self, o):
        o = DegBound.of(o)
        return DegBound(self.n + o.n, self.d + o.d)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = DegBound.of(o)
        return DegBound(self.n + o.d, self.d + o.n)

    def __rtruediv__(self, o):
        return DegBound.of(o) / self

    def __pow__(self, e: int):
        if e >= 0:
            return DegBound(self.n * e, self.d * e)
        return DegBound(self.d * -e, self.n * -e)

    @property
    def total(self) -> int:
        return max(self.n, self.d)


class DegContext:
    def __init__(self, frame: Frame):
        self.frame = frame
        self.cache: dict = {}
        self.hom_scale: dict = {}

    def lookup(self, name: str):
        if name in self.cache:
            return self.cache[name]
        fr = self.frame
        if name in fr.base or name == fr.alpha:
            val = DegBound(1, 0)
        elif name == "a":
            val = DegBound(2, 0) if fr.alpha else DegBound(1, 0)
        elif name in fr.defs:
            d = fr.defs[name]
            val = DegBound(*d.degree) if isinstance(d, Builtin) else DegBound.of(evaluate(d, self))
        else:
            raise ExprError(f"unknown name {name!r} in frame {fr.name}")
        self.cache[name] = val
        return val

    def scale(self, hom: str) -> int:
        """max numerator degree plus the sum of denominator degrees over the images."""
        s = self.hom_scale.get(hom)
        if s is None:
            spec = self.frame.homs[hom]
            bounds = [DegBound.of(evaluate(t, self)) for t in spec.images.values()]
            s = max([b.n for b in bounds] + [1]) + sum(b.d for b in bounds)
            self.hom_scale[hom] = s
        return s

    def apply(self, hom: str, node):
        b = DegBound.of(evaluate(node, self))
        k = (b.n + b.d) * self.scale(hom)
        return DegBound(k, k)


def claim_degree(frame: Frame, lhs: str, rhs: str) -> int:
    """Degree bound of the cross-multiplied difference lhs - rhs."""
    ctx = DegContext(frame)
    b1 = DegBound.of(evaluate(lhs, ctx))
    b2 = DegBound.of(evaluate(rhs, ctx))
    return max(b1.n + b2.d, b2.n + b1.d, 1)


def referenced(frame: Frame, text: str) -> set:
    """Names used by an expression, following definitions transitively."""
    out, todo = set(), list(names_in(text))
    while todo:
        n = todo.pop()
        if n in out:
            continue
        out.add(n)
        d = frame.defs.get(n)
        if isinstance(d, str):
            todo.extend(names_in(d))
    return out


__all__ = [
    "BadPoint",
    "Builtin",
    "Claim",
    "DegBound",
    "DegContext",
    "Frame",
    "FrameError",
    "HomSpec",
    "NumericContext",
    "SymbolicContext",
    "claim_degree",
    "referenced",
]
