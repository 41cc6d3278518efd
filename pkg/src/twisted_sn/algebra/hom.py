"""Substitution homomorphisms between fraction fields.

A :class:`FieldHom` is given by the images of the source ring's generators.
:func:`substitute` evaluates numerator and denominator over one common
denominator per variable (no intermediate gcds) and normalizes once.

Two fast paths matter in practice:

* every image is a distinct variable: the substitution is a key relabelling;
* every image is a monomial ratio ``c*m1/m2`` and the hom is flagged as an
  automorphism: images of coprime polynomials stay coprime up to monomials,
  so only monomial content has to be cancelled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .gcd import int_content, monomial_content
from .poly import PolyRing, _lift_alpha, _mul, _norm, _pow, _reduce_alpha, _scale
from .ratfunc import RatFunc, _canon, normalize_pair, ratfunc
from .vartable import MASK


class SubstitutionError(ZeroDivisionError):
    """The image of a denominator vanishes identically."""

    def __init__(self, msg: str, subexpression=None):
        super().__init__(msg)
        self.subexpression = subexpression


@dataclass(frozen=True)
class FieldHom:
    """Images of source generators; missing generators map to the same name.

    ``label`` is free-form metadata (the permutation and twist flag for the
    twisted action).  ``extension_action`` records ``alpha -> +-alpha`` when
    the hom moves the square root of ``a``.
    """

    source: PolyRing
    target: PolyRing
    images: dict = dc_field(default_factory=dict)
    label: object = None
    extension_action: int | None = None
    automorphism: bool = False

    def __post_init__(self):
        imgs = {}
        for name, img in self.images.items():
            if name not in self.source.vars:
                raise KeyError(f"{name!r} is not a generator of the source ring")
            r = ratfunc(img, self.target)
            if r.ring != self.target:
                raise ValueError(f"image of {name!r} lives in {r.ring}, expected {self.target}")
            imgs[name] = r
        sv = self.source.vars
        if sv.alpha is not None:
            al = sv.alpha
            if al not in imgs and self.extension_action is not None:
                imgs[al] = ratfunc(self.target.gen(al) * self.extension_action)
        for name in sv.names:
            if name not in imgs:
                if name not in self.target.vars:
                    raise KeyError(f"no image for {name!r}")
                imgs[name] = ratfunc(self.target.gen(name))
        object.__setattr__(self, "images", imgs)

    def image(self, name: str) -> RatFunc:
        return self.images[name]

    def __call__(self, e):
        return substitute(e, self)

    def respects_alpha(self) -> bool:
        """alpha**2 - a maps to zero (vacuous without alpha)."""
        al = self.source.vars.alpha
        if al is None:
            return True
        return (self.images[al] ** 2).equals(self.images["a"])

    def is_identity(self) -> bool:
        if self.source != self.target:
            return False
        return all(
            img.is_polynomial() and img.num == self.target.gen(n) for n, img in self.images.items()
        )


def identity_hom(ring: PolyRing) -> FieldHom:
    return FieldHom(ring, ring, {}, automorphism=True)


# -- evaluation helpers ---------------------------------------------------------


def _degrees(d: dict, vt) -> list[int]:
    out = []
    for sh in vt.shifts:
        out.append(max(((k >> sh) & MASK for k in d), default=0))
    return out


def _is_permutation(h: FieldHom):
    """Return {source index: target index} when each image is a distinct variable."""
    tv = h.target.vars
    sv = h.source.vars
    mapping = {}
    seen = set()
    for i, name in enumerate(sv.names):
        img = h.images[name]
        if not img.is_polynomial() or img._d[0] != 1 or len(img._n) != 1:
            return None
        (k, c), = img._n.items()
        if c != 1 or tv.degree_of(k, len(tv)) != 1:
            return None
        j = next(jj for jj, u in enumerate(tv.units) if u == k)
        if j in seen:
            return None
        seen.add(j)
        mapping[i] = j
    return mapping


def _relabel(d: dict, mapping: dict, sv, tv) -> dict:
    out = {}
    sel = [(sv.shifts[i], tv.units[j]) for i, j in mapping.items()]
    for k, c in d.items():
        nk = 0
        for sh, u in sel:
            e = (k >> sh) & MASK
            if e:
                nk += e * u
        out[nk] = c
    return out


def _monomial_images(h: FieldHom):
    """(coeff, num key, den key) per source variable, or None."""
    out = []
    for name in h.source.vars.names:
        img = h.images[name]
        if len(img._n) != 1 or len(img._d) != 1:
            return None
        (kn, cn), = img._n.items()
        (kd, cd), = img._d.items()
        p = h.target.p
        c = cn * pow(cd, -1, p) % p if p else (cn if cd == 1 else cn / cd)
        out.append((c, kn, kd))
    return out


def _eval_monomial(d: dict, mons, degs, sv, tv, p) -> dict:
    """Numerator of P(images) over the denominator prod den_i**deg_i(P)."""
    out: dict = {}
    get = out.get
    shifts = sv.shifts
    for k, c in d.items():
        nk = 0
        coeff = c
        for i, sh in enumerate(shifts):
            D = degs[i]
            if not D:
                continue
            e = (k >> sh) & MASK
            ci, kn, kd = mons[i]
            if e:
                if ci != 1:
                    coeff = coeff * (pow(ci, e, p) if p else ci**e)
                nk += e * kn
            if D - e:
                nk += (D - e) * kd
        out[nk] = get(nk, 0) + coeff
    return _norm(out, p)


def _horner(d: dict, order: list[int], pos: int, nums, dens, degs, sv, ring, cache) -> dict:
    """sum_k C_k * num_i**k * den_i**(D_i - k), recursively over variables."""
    p = ring.p
    if pos == len(order):
        # only the constant slot remains
        return {0: d[0]} if d.get(0) else {}
    i = order[pos]
    D = degs[i]
    if D == 0:
        return _horner(d, order, pos + 1, nums, dens, degs, sv, ring, cache)
    sh, u = sv.shifts[i], sv.units[i]
    groups: dict[int, dict] = {}
    for k, c in d.items():
        e = (k >> sh) & MASK
        groups.setdefault(e, {})[k - e * u] = c
    acc: dict = {}
    for e, sub in groups.items():
        part = _horner(sub, order, pos + 1, nums, dens, degs, sv, ring, cache)
        if not part:
            continue
        fac = _factor(i, e, D, nums, dens, ring, cache)
        term = ring._clean(_mul(part, fac, p))
        for kk, cc in term.items():
            acc[kk] = acc.get(kk, 0) + cc
    return _norm(acc, p)


def _factor(i, e, D, nums, dens, ring, cache):
    key = (i, e, D)
    f = cache.get(key)
    if f is None:
        f = _mul(_power(nums, i, e, ring, cache), _power(dens, i, D - e, ring, cache), ring.p)
        f = ring._clean(f)
        cache[key] = f
    return f


def _power(base, i, e, ring, cache):
    key = (id(base), i, e)
    f = cache.get(key)
    if f is None:
        if e == 0:
            f = {0: 1}
        elif e == 1:
            f = base[i]
        else:
            half = _power(base, i, e // 2, ring, cache)
            f = ring._clean(_mul(half, half, ring.p))
            if e & 1:
                f = ring._clean(_mul(f, base[i], ring.p))
        cache[key] = f
    return f


def _eval_general(d: dict, h: FieldHom, degs, cache) -> dict:
    sv = h.source.vars
    ring = h.target
    nums = [h.images[n]._n for n in sv.names]
    dens = [h.images[n]._d for n in sv.names]
    order = [i for i in range(len(sv)) if degs[i]]
    # variables with many distinct exponents first: fewer, larger groups below
    order.sort(key=lambda i: -degs[i])
    return _horner(d, order, 0, nums, dens, degs, sv, ring, cache)


def substitute(e, h: FieldHom) -> RatFunc:
    """Image of ``e`` under the field homomorphism determined by ``h``."""
    e = ratfunc(e, h.source)
    if e.ring != h.source:
        raise ValueError(f"expression ring {e.ring} does not match hom source {h.source}")
    sv, tv = h.source.vars, h.target.vars
    ring = h.target
    p = ring.p
    n, d = e._n, e._d
    if not n:
        return RatFunc._make(ring, {}, {0: 1})

    perm = _is_permutation(h)
    if perm is not None:
        nn = ring._clean(_relabel(n, perm, sv, tv))
        dd = ring._clean(_relabel(d, perm, sv, tv))
        if not e.reduced:
            nn, dd = _canon(nn, dd, p)
            return RatFunc(nn, dd, ring=ring, _trusted=True, _reduced=False)
        if not ring.has_alpha:
            nn, dd = _canon(nn, dd, p)
            return RatFunc._make(ring, nn, dd)
        return RatFunc(nn, dd, ring=ring)

    dn, dd_ = _degrees(n, sv), _degrees(d, sv)
    mons = _monomial_images(h)
    if mons is not None:
        A = ring._clean(_eval_monomial(n, mons, dn, sv, tv, p))
        B = ring._clean(_eval_monomial(d, mons, dd_, sv, tv, p))
    else:
        cache: dict = {}
        A = _eval_general(n, h, dn, cache)
        B = _eval_general(d, h, dd_, cache)
    if not B:
        raise SubstitutionError("denominator maps to zero under the substitution", e.den)
    # A/prod den_i**dn_i  divided by  B/prod den_i**dd_i
    extra_num, extra_den = {0: 1}, {0: 1}
    for i, name in enumerate(sv.names):
        diff = dd_[i] - dn[i]
        if diff == 0:
            continue
        di = h.images[name]._d
        if len(di) == 1 and 0 in di and di[0] == 1:
            continue
        if diff > 0:
            extra_num = ring._clean(_mul(extra_num, _pow(di, diff, p), p))
        else:
            extra_den = ring._clean(_mul(extra_den, _pow(di, -diff, p), p))
    if len(extra_num) > 1 or 0 not in extra_num:
        A = ring._clean(_mul(A, extra_num, p))
    if len(extra_den) > 1 or 0 not in extra_den:
        B = ring._clean(_mul(B, extra_den, p))
    if mons is not None and h.automorphism and e.reduced:
        return _cancel_monomial(A, B, ring)
    nn, dd = normalize_pair(A, B, ring)
    return RatFunc._make(ring, nn, dd)


def _cancel_monomial(A: dict, B: dict, ring: PolyRing) -> RatFunc:
    vt, p = ring.vars, ring.p
    if ring.has_alpha:
        A, B = _lift_alpha(A, vt), _lift_alpha(B, vt)
    if not A:
        return RatFunc._make(ring, {}, {0: 1})
    ma, mb = monomial_content(A, vt), monomial_content(B, vt)
    m = 0
    for i, sh in enumerate(vt.shifts):
        ex = min((ma >> sh) & MASK, (mb >> sh) & MASK)
        if ex:
            m += ex * vt.units[i]
    if m:
        A = {k - m: c for k, c in A.items()}
        B = {k - m: c for k, c in B.items()}
    if not p:
        # integer content can still be shared; clear denominators jointly first
        if any(isinstance(v, Fraction) for v in A.values()) or any(
            isinstance(v, Fraction) for v in B.values()
        ):
            L = 1
            for v in list(A.values()) + list(B.values()):
                if isinstance(v, Fraction):
                    L = L * v.denominator // math.gcd(L, v.denominator)
            A = {k: int(v * L) for k, v in A.items()}
            B = {k: int(v * L) for k, v in B.items()}
        g = math.gcd(int_content(A), int_content(B)) if A else 1
        if g > 1:
            A = {k: v // g for k, v in A.items()}
            B = {k: v // g for k, v in B.items()}
    A, B = _canon(A, B, p)
    if ring.has_alpha:
        A, B = _reduce_alpha(A, vt, p), _reduce_alpha(B, vt, p)
    return RatFunc._make(ring, A, B)


def compose_homs(outer: FieldHom, inner: FieldHom) -> FieldHom:
    """outer o inner: first apply inner, then outer (v -> outer(inner(v)))."""
    if inner.target != outer.source:
        raise ValueError("inner target must equal outer source")
    imgs = {n: substitute(img, outer) for n, img in inner.images.items()}
    ext = None
    if inner.extension_action is not None or outer.extension_action is not None:
        ext = (inner.extension_action or 1) * (outer.extension_action or 1)
    return FieldHom(inner.source, outer.target, imgs, label=None, extension_action=ext,
                    automorphism=inner.automorphism and outer.automorphism)


def hom_equal(h1: FieldHom, h2: FieldHom) -> bool:
    if h1.source != h2.source or h1.target != h2.target:
        return False
    return all(h1.images[n] == h2.images[n] for n in h1.source.vars.names)
