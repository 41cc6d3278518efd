"""Multivariate polynomial GCD on raw term dicts.

Strategy, cheapest first:

* strip the monomial content (common power of each variable);
* a variable that occurs in only one operand splits that operand into its
  coefficients with respect to the variable, which are gcd'ed one by one;
* over Q: heuristic GCD (evaluation at a large integer, interpolation,
  trial division), falling back to the subresultant PRS;
* over F_p: a specialization test first.  If the operands, evaluated at a
  random point in every variable but one, have a constant univariate gcd
  and keep their degree in that variable, the true gcd has degree 0 in it
  and equals the gcd of the contents.  Otherwise the subresultant PRS in
  the variable of lowest degree, recursing into the coefficient ring for
  contents.

Results are normalized: primitive with positive leading integer coefficient
over Q, monic over F_p.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from math import isqrt

from .poly import _add, _divexact, _mul, _norm, _scale
from .vartable import MASK, VarTable

HEU_GCD_MAX = 6
DEGREE_TESTS = 2


class HeuristicGCDFailed(Exception):
    pass


# -- small dict utilities -------------------------------------------------------


def present_vars(d: dict, vt: VarTable) -> list[int]:
    acc = 0
    for k in d:
        acc |= k
    return [i for i, s in enumerate(vt.shifts) if (acc >> s) & MASK]


def degree_in(d: dict, i: int, vt: VarTable) -> int:
    sh = vt.shifts[i]
    return max((k >> sh) & MASK for k in d)


def monomial_content(d: dict, vt: VarTable) -> int:
    """Key of the largest monomial dividing every term."""
    out = 0
    for i, sh in enumerate(vt.shifts):
        m = min((k >> sh) & MASK for k in d)
        if m:
            out += m * vt.units[i]
            if not m:
                break
    return out


def split_by(d: dict, idxs: list[int], vt: VarTable) -> dict[int, dict]:
    """Group terms by their monomial in the variables ``idxs``."""
    sel = [(vt.shifts[i], vt.units[i]) for i in idxs]
    out: dict[int, dict] = {}
    for k, c in d.items():
        part = 0
        for sh, u in sel:
            e = (k >> sh) & MASK
            if e:
                part += e * u
        out.setdefault(part, {})[k - part] = c
    return out


def univariate(d: dict, i: int, vt: VarTable) -> dict[int, dict]:
    sh, u = vt.shifts[i], vt.units[i]
    out: dict[int, dict] = {}
    for k, c in d.items():
        e = (k >> sh) & MASK
        out.setdefault(e, {})[k - e * u] = c
    return out


def from_univariate(U: dict[int, dict], i: int, vt: VarTable) -> dict:
    u = vt.units[i]
    out = {}
    for e, c in U.items():
        s = e * u
        for k, v in c.items():
            out[k + s] = v
    return out


def normalize_gcd(d: dict, p: int) -> dict:
    if not d:
        return d
    lc = d[max(d)]
    if p:
        if lc == 1:
            return d
        return _scale(d, pow(lc, -1, p), p)
    d = clear_denominators(d)
    c = 0
    for v in d.values():
        c = math.gcd(c, v)
        if c == 1:
            break
    if d[max(d)] < 0:
        c = -c
    if c == 1:
        return d
    return {k: v // c for k, v in d.items()}


def clear_denominators(d: dict) -> dict:
    if all(type(v) is int for v in d.values()):
        return d
    den = 1
    for v in d.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // math.gcd(den, v.denominator)
    out = {}
    for k, v in d.items():
        w = v * den
        out[k] = int(w)
    return out


def int_content(d: dict) -> int:
    c = 0
    for v in d.values():
        c = math.gcd(c, v)
        if c == 1:
            return 1
    return c


# -- public entry -------------------------------------------------------------------


def poly_gcd(f: dict, g: dict, vt: VarTable, p: int) -> dict:
    """Normalized gcd of two term dicts (no alpha handling here)."""
    if not f:
        return normalize_gcd(dict(g), p)
    if not g:
        return normalize_gcd(dict(f), p)
    if p == 0:
        f = clear_denominators(f)
        g = clear_denominators(g)
    mf, mg = monomial_content(f, vt), monomial_content(g, vt)
    m = 0
    for i, sh in enumerate(vt.shifts):
        e = min((mf >> sh) & MASK, (mg >> sh) & MASK)
        if e:
            m += e * vt.units[i]
    if mf:
        f = {k - mf: c for k, c in f.items()}
    if mg:
        g = {k - mg: c for k, c in g.items()}
    h = _gcd_core(f, g, vt, p)
    if m:
        h = {k + m: c for k, c in h.items()}
    return normalize_gcd(h, p)


def multi_gcd(polys, vt: VarTable, p: int) -> dict:
    h: dict = {}
    for q in polys:
        h = poly_gcd(h, q, vt, p) if h else normalize_gcd(dict(q), p)
        if len(h) == 1 and 0 in h:
            return {0: 1}
    return h


def _gcd_core(f: dict, g: dict, vt: VarTable, p: int) -> dict:
    """gcd of two polynomials with no monomial content; unnormalized scalar."""
    if len(f) == 1 or len(g) == 1:
        # after removing monomial content a single term is a constant
        return _const_gcd(f, g, p)
    vf, vg = present_vars(f, vt), present_vars(g, vt)
    only_f = [i for i in vf if i not in vg]
    only_g = [i for i in vg if i not in vf]
    if only_f or only_g:
        parts = []
        if only_f:
            parts.extend(split_by(f, only_f, vt).values())
        else:
            parts.append(f)
        if only_g:
            parts.extend(split_by(g, only_g, vt).values())
        else:
            parts.append(g)
        parts.sort(key=len)
        return multi_gcd(parts, vt, p)
    if p == 0:
        try:
            return _heugcd(f, g, vt)[0]
        except HeuristicGCDFailed:
            pass
    else:
        order = sorted(vf, key=lambda j: (max(degree_in(f, j, vt), degree_in(g, j, vt)), j))
        for i in order[:DEGREE_TESTS]:
            if _degree_zero_in(f, g, i, vt, p):
                parts = list(univariate(f, i, vt).values()) + list(univariate(g, i, vt).values())
                return multi_gcd(sorted(parts, key=len), vt, p)
    return _prs_gcd(f, g, vt, p)


def _const_gcd(f: dict, g: dict, p: int) -> dict:
    if p:
        return {0: 1}
    return {0: math.gcd(int_content(f), int_content(g))}


# -- degree test by specialization over F_p -----------------------------------------

_SPEC_RNG = random.Random(20240601)
_SPEC_FIELDS: dict = {}


def _spec_field(p: int):
    if p not in _SPEC_FIELDS:
        from .finite import specialization_field

        _SPEC_FIELDS[p] = specialization_field(p)
    return _SPEC_FIELDS[p]


def _eval_univariate(d: dict, i: int, vals: dict, vt: VarTable, F) -> list:
    """d with every variable except i set to vals; dense coefficients, low degree first."""
    sh_i = vt.shifts[i]
    others = [(j, vt.shifts[j]) for j in vals]
    powers = {j: [F.one] for j in vals}
    out: dict[int, object] = {}
    for k, c in d.items():
        t = F.from_int(c)
        for j, sh in others:
            e = (k >> sh) & MASK
            if e:
                pw = powers[j]
                while len(pw) <= e:
                    pw.append(F.mul(pw[-1], vals[j]))
                t = F.mul(t, pw[e])
        e = (k >> sh_i) & MASK
        out[e] = F.add(out.get(e, F.zero), t)
    dense = [F.zero] * (max(out) + 1)
    for e, v in out.items():
        dense[e] = v
    return dense


def _udeg(a: list, F) -> int:
    d = len(a) - 1
    while d >= 0 and a[d] == F.zero:
        d -= 1
    return d


def _ugcd_degree(a: list, b: list, F) -> int:
    """Degree of the gcd of two dense univariate polynomials over F."""
    a, b = a[: _udeg(a, F) + 1], b[: _udeg(b, F) + 1]
    while b:
        db = len(b) - 1
        inv = F.inv(b[db])
        while len(a) - 1 >= db and a:
            da = len(a) - 1
            q = F.mul(a[da], inv)
            for k in range(db + 1):
                a[da - db + k] = F.sub(a[da - db + k], F.mul(q, b[k]))
            a = a[: _udeg(a, F) + 1]
        a, b = b, a
    return len(a) - 1


def _degree_zero_in(f: dict, g: dict, i: int, vt: VarTable, p: int) -> bool:
    """True only if gcd(f, g) provably has degree 0 in variable i.

    The univariate gcd of the specializations has degree at least that of
    the true gcd whenever both leading coefficients survive the point.
    """
    F = _spec_field(p)
    vs = sorted((set(present_vars(f, vt)) | set(present_vars(g, vt))) - {i})
    vals = {j: F.random(_SPEC_RNG) for j in vs}
    uf = _eval_univariate(f, i, vals, vt, F)
    ug = _eval_univariate(g, i, vals, vt, F)
    if _udeg(uf, F) != degree_in(f, i, vt) or _udeg(ug, F) != degree_in(g, i, vt):
        return False
    return _ugcd_degree(uf, ug, F) == 0


# -- heuristic gcd over Z -----------------------------------------------------------


def _evaluate(d: dict, i: int, x: int, vt: VarTable) -> dict:
    sh, u = vt.shifts[i], vt.units[i]
    out: dict = {}
    get = out.get
    powers = [1]
    for k, c in d.items():
        e = (k >> sh) & MASK
        while len(powers) <= e:
            powers.append(powers[-1] * x)
        nk = k - e * u
        out[nk] = get(nk, 0) + c * powers[e]
    return {k: c for k, c in out.items() if c}


def _interpolate(h: dict, i: int, x: int, vt: VarTable) -> dict:
    u = vt.units[i]
    half = x // 2
    out = {}
    for k, c in h.items():
        e = 0
        while c:
            r = c % x
            if r > half:
                r -= x
            if r:
                out[k + e * u] = r
            c = (c - r) // x
            e += 1
    if out and out[max(out)] < 0:
        out = {k: -c for k, c in out.items()}
    return out


def _primitive(d: dict) -> dict:
    c = int_content(d)
    if c == 1:
        return d
    return {k: v // c for k, v in d.items()}


def _heugcd(f: dict, g: dict, vt: VarTable):
    """Returns (h, f/h, g/h) for integer polynomials f, g."""
    vs = sorted(set(present_vars(f, vt)) | set(present_vars(g, vt)))
    if not vs:
        a, b = f.get(0, 0), g.get(0, 0)
        h = math.gcd(a, b)
        return {0: h}, {0: a // h}, {0: b // h}
    cont = math.gcd(int_content(f), int_content(g))
    if cont != 1:
        f = {k: c // cont for k, c in f.items()}
        g = {k: c // cont for k, c in g.items()}
    fn = max(abs(c) for c in f.values())
    gn = max(abs(c) for c in g.values())
    B = 2 * min(fn, gn) + 29
    x = max(min(B, 99 * isqrt(B)), 2 * min(fn // abs(f[max(f)]), gn // abs(g[max(g)])) + 4)
    i = vs[-1]
    guard = vt.guard
    for _ in range(HEU_GCD_MAX):
        ff = _evaluate(f, i, x, vt)
        gg = _evaluate(g, i, x, vt)
        if ff and gg:
            h, cff, cfg = _heugcd(ff, gg, vt)
            h = _primitive(_interpolate(h, i, x, vt))
            q1 = _divexact(f, h, 0, guard)
            if q1 is not None and _intpoly(q1):
                q2 = _divexact(g, h, 0, guard)
                if q2 is not None and _intpoly(q2):
                    return _scale(h, cont, 0), q1, q2
            cff = _interpolate(cff, i, x, vt)
            if cff:
                h2 = _divexact(f, cff, 0, guard)
                if h2 is not None and _intpoly(h2):
                    q2 = _divexact(g, h2, 0, guard)
                    if q2 is not None and _intpoly(q2):
                        return _scale(h2, cont, 0), cff, q2
            cfg = _interpolate(cfg, i, x, vt)
            if cfg:
                h3 = _divexact(g, cfg, 0, guard)
                if h3 is not None and _intpoly(h3):
                    q1 = _divexact(f, h3, 0, guard)
                    if q1 is not None and _intpoly(q1):
                        return _scale(h3, cont, 0), q1, cfg
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    raise HeuristicGCDFailed("no luck")


def _intpoly(d: dict) -> bool:
    return all(type(c) is int for c in d.values())


# -- subresultant PRS -------------------------------------------------------------


def _prs_gcd(f: dict, g: dict, vt: VarTable, p: int) -> dict:
    vs = present_vars(f, vt)
    # main variable: lowest degree keeps the remainder sequence short
    i = min(vs, key=lambda j: (max(degree_in(f, j, vt), degree_in(g, j, vt)), j))
    F = univariate(f, i, vt)
    G = univariate(g, i, vt)
    cf = multi_gcd(sorted(F.values(), key=len), vt, p)
    cg = multi_gcd(sorted(G.values(), key=len), vt, p)
    c = poly_gcd(cf, cg, vt, p)
    guard = vt.guard
    F = {e: _divexact(v, cf, p, guard) for e, v in F.items()}
    G = {e: _divexact(v, cg, p, guard) for e, v in G.items()}
    if max(F) < max(G):
        F, G = G, F
    H = _subresultant_last(F, G, p, guard)
    if max(H) == 0:
        return c
    ch = multi_gcd(sorted(H.values(), key=len), vt, p)
    H = {e: _divexact(v, ch, p, guard) for e, v in H.items()}
    return _mul(from_univariate(H, i, vt), c, p)


def _u_mul_scalar(U: dict, s: dict, p: int) -> dict:
    return {e: _mul(v, s, p) for e, v in U.items()}


def _prem(A: dict, B: dict, p: int) -> dict:
    """Pseudo-remainder of univariate-over-ring polynomials {deg: coeff dict}."""
    dA, dB = max(A), max(B)
    lcB = B[dB]
    R = dict(A)
    N = dA - dB + 1
    while R and max(R) >= dB:
        dR = max(R)
        lcR = R[dR]
        shift = dR - dB
        new = {}
        for e, v in R.items():
            new[e] = _mul(v, lcB, p)
        for e, v in B.items():
            t = _mul(v, lcR, p)
            cur = new.get(e + shift, {})
            new[e + shift] = _add(cur, t, p, -1)
        R = {e: v for e, v in new.items() if v}
        N -= 1
    if N and R:
        s = _pow_dict(lcB, N, p)
        R = _u_mul_scalar(R, s, p)
    return R


def _pow_dict(d: dict, n: int, p: int) -> dict:
    out = {0: 1}
    for _ in range(n):
        out = _mul(out, d, p)
    return out


def _subresultant_last(A: dict, B: dict, p: int, guard: int) -> dict:
    g = {0: 1}
    h = {0: 1}
    while True:
        delta = max(A) - max(B)
        R = _prem(A, B, p)
        if not R:
            return B
        if max(R) == 0:
            return {0: {0: 1}}
        A = B
        div = _mul(g, _pow_dict(h, delta, p), p)
        B = {e: _divexact(v, div, p, guard) for e, v in R.items()}
        g = A[max(A)]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = _divexact(_pow_dict(g, delta, p), _pow_dict(h, delta - 1, p), p, guard)


def gcd(f, g):
    """Normalized gcd of two MultiPoly values over the same ring; gcd(0, g) is g normalized."""
    if f.ring != g.ring:
        raise ValueError("gcd operands live in different rings")
    return f.ring._make(poly_gcd(f._t, g._t, f.ring.vars, f.ring.p))
