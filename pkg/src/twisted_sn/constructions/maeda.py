"""Maeda's transcendence basis F1..F5 of K(x1..x5)^{A5} and the G-basis.

Each F_i is a quotient of coset or full-group sums of products of
differences [ij] = x_i - x_j.  Two independent evaluation routes are
provided:

* symbolic: the sums are expanded once into :class:`MultiPoly` values (full
  S5 sums through monomial orbit sums, coset sums by relabelling);
* numeric: the displayed sums are evaluated term by term at a point.

Permutations act on polynomials by x_i -> x_{mu(i)}.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..algebra.fields import CoeffField
from ..algebra.poly import MultiPoly, PolyRing
from ..algebra.ratfunc import RatFunc
from ..groups import R1, R2, R3, Perm, parse_cycles, symmetric_group
from .frame import Builtin, Frame

TERM_BUDGET = 10**7

# bracket monomials: ({(i, j): exponent}, extra power of x1)
F1_DEN = {(1, 2): 1, (1, 3): 1, (1, 4): 1, (1, 5): 1, (2, 3): 4, (4, 5): 4}
F2_NUM = {(1, 2): 3, (1, 3): 3, (1, 4): 3, (1, 5): 3, (2, 3): 10, (4, 5): 10}
F4_NUM = {(1, 2): 2, (1, 3): 2, (2, 3): 2, (4, 5): 4}
F5_NUM = {(1, 2): 2, (1, 3): 2, (2, 3): 2, (1, 4): 4, (2, 4): 4, (3, 4): 4,
          (1, 5): 4, (2, 5): 4, (3, 5): 4}
F4_CHAR2_NUM = {(1, 2): 2, (3, 4): 2, (1, 3): 1, (2, 4): 1, (1, 5): 1, (2, 5): 1,
                (3, 5): 1, (4, 5): 1}
ALL_PAIRS = [(i, j) for i in range(1, 6) for j in range(i + 1, 6)]


def maeda_ring(char: int) -> PolyRing:
    return PolyRing(CoeffField(char, True), [f"x{i}" for i in range(1, 6)] + ["a"])


class BudgetExceeded(RuntimeError):
    pass


# -- symbolic route -----------------------------------------------------------------------


def bracket_poly(ring: PolyRing, spec: dict, x1_power: int = 0) -> MultiPoly:
    out = ring.one
    for (i, j), k in sorted(spec.items()):
        out = out * (ring.gen(f"x{i}") - ring.gen(f"x{j}")) ** k
    if x1_power:
        out = out * ring.gen("x1") ** x1_power
    return out


def relabel(poly: MultiPoly, mu: Perm) -> MultiPoly:
    """mu(P): x_i -> x_{mu(i)}."""
    vt = poly.ring.vars
    n = mu.n
    shifts = vt.shifts[:n]
    units = vt.units
    rest_mask = 0
    for s in shifts:
        rest_mask |= 0xFFFFFFFF << s
    new_units = [units[mu(i + 1) - 1] for i in range(n)]
    d = {}
    for k, c in poly._t.items():
        nk = k
        for i, s in enumerate(shifts):
            e = (k >> s) & 0xFFFFFFFF
            if e:
                nk += e * (new_units[i] - units[i])
        d[nk] = c
    return poly.ring._make(d)


def s5_sum(poly: MultiPoly, budget: list) -> MultiPoly:
    """Sum of mu(P) over all of S5, via monomial orbit sums."""
    ring = poly.ring
    vt = ring.vars
    p = ring.p
    by_shape: dict = defaultdict(lambda: 0)
    for k, c in poly._t.items():
        e = vt.unpack(k)
        shape = tuple(sorted(e[:5], reverse=True)) + tuple(e[5:])
        by_shape[shape] = by_shape[shape] + c
    out: dict = {}
    for shape, c in by_shape.items():
        if p:
            c %= p
        if not c:
            continue
        head, tail = shape[:5], shape[5:]
        mult = Counter(head)
        stab = math.prod(math.factorial(m) for m in mult.values())
        coef = c * stab
        if p:
            coef %= p
            if not coef:
                continue
        for e in set(itertools.permutations(head)):
            k = vt.pack(tuple(e) + tail)
            out[k] = out.get(k, 0) + coef
        budget[0] += math.factorial(5) // stab
        if budget[0] > TERM_BUDGET:
            raise BudgetExceeded("expansion exceeds the term budget")
    if p:
        out = {k: c % p for k, c in out.items() if c % p}
    return ring._make({k: c for k, c in out.items() if c})


def coset_sum(poly: MultiPoly, reps, budget: list) -> MultiPoly:
    out = poly.ring.zero
    for mu in reps:
        budget[0] += len(poly)
        if budget[0] > TERM_BUDGET:
            raise BudgetExceeded("expansion exceeds the term budget")
        out = out + relabel(poly, mu)
    return out


@dataclass
class Quotient:
    """F = prod(num factors) / prod(den factors), factors kept separate."""

    num: list
    den: list

    def ratfunc(self) -> RatFunc:
        ring = self.num[0].ring
        n, d = ring.one, ring.one
        for f in self.num:
            n = n * f
        for f in self.den:
            d = d * f
        return RatFunc.unreduced(n, d)

    def terms(self) -> int:
        return sum(len(f) for f in self.num + self.den)


def _perms(texts) -> list[Perm]:
    return [parse_cycles(t, 5) for t in texts]


@lru_cache(maxsize=None)
def maeda_symbolic(char: int) -> tuple[Quotient, ...]:
    """Expanded F1..F5 for the characteristic branch of ``char``."""
    ring = maeda_ring(char)
    budget = [0]
    disc = bracket_poly(ring, {pair: 1 for pair in ALL_PAIRS})
    R1p = _perms(R1)
    f5 = Quotient([coset_sum(bracket_poly(ring, F5_NUM), R1p, budget)], [disc, disc, disc])
    xs = [ring.gen(f"x{i}") for i in range(1, 6)]
    if char != 2:
        den = s5_sum(bracket_poly(ring, F1_DEN), budget)
        f1 = Quotient([s5_sum(bracket_poly(ring, F1_DEN, 1), budget)], [den])
        disc2 = disc * disc
        f2 = Quotient([s5_sum(bracket_poly(ring, F2_NUM), budget)], [disc2, den])
        f3 = Quotient([s5_sum(bracket_poly(ring, F2_NUM, 1), budget)], [disc2, den])
        f4 = Quotient([coset_sum(bracket_poly(ring, F4_NUM), R1p, budget)], [disc])
        return (f1, f2, f3, f4, f5)
    e2 = sum((xs[i] * xs[j] for i, j in itertools.combinations(range(5), 2)), ring.zero)
    e3 = sum((xs[i] * xs[j] * xs[k] for i, j, k in itertools.combinations(range(5), 3)), ring.zero)
    f1 = Quotient([e3], [e2])
    x2, x3, x4, x5 = xs[1:]
    I = coset_sum(x2 * x3 * (x2 * x3 + x4**2 + x5**2), _perms(R2), budget)
    G = bracket_poly(ring, {(1, 2): 1, (1, 3): 1, (1, 4): 1, (1, 5): 1}) * I * I
    transp = [Perm.identity(5)] + [parse_cycles(f"(1{i})", 5) for i in range(2, 6)]
    f2 = Quotient([coset_sum(G, transp, budget)], [disc, e2])
    f3 = Quotient([coset_sum(G * xs[0], transp, budget)], [disc, e2])
    f4 = Quotient([coset_sum(bracket_poly(ring, F4_CHAR2_NUM), _perms(R3), budget)], [disc])
    return (f1, f2, f3, f4, f5)


# -- numeric route --------------------------------------------------------------------------


def _bracket_value(y: list, spec: dict, x1_power: int = 0):
    v = y[0] ** x1_power if x1_power else 1
    for (i, j), k in spec.items():
        v = v * (y[i - 1] - y[j - 1]) ** k
    return v


def _act(x: list, mu: Perm) -> list:
    """Point at which mu(P) is evaluated: y_i = x_{mu(i)}."""
    return [x[mu(i) - 1] for i in range(1, 6)]


@lru_cache(maxsize=None)
def _s5() -> tuple:
    return tuple(symmetric_group(5))


def maeda_numeric(char: int, x: list) -> tuple:
    """F1..F5 evaluated term by term from their displayed sums at the point x."""
    s5 = _s5()
    disc = _bracket_value(x, {pair: 1 for pair in ALL_PAIRS})
    R1p = _perms(R1)
    f5 = sum((_bracket_value(_act(x, mu), F5_NUM) for mu in R1p), 0) / disc**3
    if char != 2:
        den = sum((_bracket_value(_act(x, s), F1_DEN) for s in s5), 0)
        f1 = sum((_bracket_value(_act(x, s), F1_DEN, 1) for s in s5), 0) / den
        f2 = sum((_bracket_value(_act(x, s), F2_NUM) for s in s5), 0) / (disc**2 * den)
        f3 = sum((_bracket_value(_act(x, s), F2_NUM, 1) for s in s5), 0) / (disc**2 * den)
        f4 = sum((_bracket_value(_act(x, mu), F4_NUM) for mu in R1p), 0) / disc
        return (f1, f2, f3, f4, f5)
    e2 = sum((x[i] * x[j] for i, j in itertools.combinations(range(5), 2)), 0)
    e3 = sum((x[i] * x[j] * x[k] for i, j, k in itertools.combinations(range(5), 3)), 0)
    R2p = _perms(R2)

    def I(y):
        return sum((z[1] * z[2] * (z[1] * z[2] + z[3] ** 2 + z[4] ** 2) for z in (_act(y, t) for t in R2p)), 0)

    def G(y, x1_power=0):
        return _bracket_value(y, {(1, 2): 1, (1, 3): 1, (1, 4): 1, (1, 5): 1}, x1_power) * I(y) ** 2

    transp = [Perm.identity(5)] + [parse_cycles(f"(1{i})", 5) for i in range(2, 6)]
    f2 = sum((G(_act(x, t)) for t in transp), 0) / (disc * e2)
    f3 = sum((G(_act(x, t), 1) for t in transp), 0) / (disc * e2)
    f4 = sum((_bracket_value(_act(x, nu), F4_CHAR2_NUM) for nu in _perms(R3)), 0) / disc
    return (e3 / e2, f2, f3, f4, f5)


DEGREES = {
    "odd": [(13, 12), (32, 32), (33, 32), (10, 10), (30, 30)],
    "two": [(3, 2), (12, 12), (13, 12), (10, 10), (30, 30)],
}


def maeda_builtin(i: int, char: int) -> Builtin:
    def sym(ctx):
        return maeda_symbolic(char)[i - 1].ratfunc()

    def num(ctx):
        key = ("maeda", char)
        vals = ctx.cache.get(key)
        if vals is None:
            x = [ctx.lookup(f"x{k}") for k in range(1, 6)]
            vals = maeda_numeric(char, x)
            ctx.cache[key] = vals
        return vals[i - 1]

    deg = DEGREES["two" if char == 2 else "odd"][i - 1]
    return Builtin(sym, num, deg, f"Maeda F{i} ({'char 2' if char == 2 else 'char != 2'} formulas)")


def maeda_frame(char: int = 0) -> Frame:
    """x1..x5 with F1..F5 as builtins and the homs (123), (12345) and twisted tau = (12)."""
    from .symmetric import twisted_images

    fr = Frame("maeda", tuple(f"x{i}" for i in range(1, 6)), char=char)
    for i in range(1, 6):
        fr.define(f"F{i}", maeda_builtin(i, char))
    fr.add_hom("c3", twisted_images(parse_cycles("(123)", 5)), automorphism=True)
    fr.add_hom("c5", twisted_images(parse_cycles("(12345)", 5)), automorphism=True)
    fr.add_hom("tau", twisted_images(parse_cycles("(12)", 5)), automorphism=True)
    for i in range(1, 6):
        fr.claim(f"(123) fixes F{i}", f"c3(F{i})", f"F{i}", "A5 invariance")
        fr.claim(f"(12345) fixes F{i}", f"c5(F{i})", f"F{i}", "A5 invariance")
    fr.table("tau on F1..F5", "tau", f_tau(char))
    return fr


def f_tau(char: int) -> dict:
    tab = {"F1": "a/F1", "F2": "F3/F1", "F3": "a*F2/F1"}
    if char == 2:
        tab.update({"F4": "F4 + 1", "F5": "F5"})
    else:
        tab.update({"F4": "-F4", "F5": "-F5"})
    return tab


def g_defs(char: int) -> dict:
    if char == 2:
        return {"G1": "F1", "G2": "F2", "G3": "F2*F3/F1", "G4": "F4 + F3/(F1*F2 + F3)", "G5": "F5"}
    return {"G1": "F1", "G2": "(F4 + 1)/(F4 - 1)", "G3": "F4*(F2 - F3/F1)", "G4": "F2 + F3/F1",
            "G5": "F4*F5"}


def g_tau(char: int) -> dict:
    if char == 2:
        return {"G1": "a/G1", "G2": "G3/G2", "G3": "G3", "G4": "G4", "G5": "G5"}
    return {"G1": "a/G1", "G2": "1/G2", "G3": "G3", "G4": "G4", "G5": "G5"}


def build_g_basis(char: int = 0) -> Frame:
    """Free frame on F1..F5 with tau from the F-table, G1..G5 and their tau-table."""
    fr = Frame("G-basis", tuple(f"F{i}" for i in range(1, 6)), char=char)
    fr.add_hom("tau", f_tau(char))
    for name, expr in g_defs(char).items():
        fr.define(name, expr)
    fr.table("tau on G1..G5", "tau", g_tau(char))
    fr.claim("tau^2 on F", "tau(tau(F2))", "F2", "tau on G1..G5")
    if char != 2:
        fr.claim("tau(G2)*G2", "tau(G2)*G2", "1", "tau on G1..G5")
    return fr


def semi_invariance(q: Quotient, mu: Perm) -> tuple[bool, str | None]:
    """Check mu(f) = c_f * f for each factor with prod(num c) = prod(den c)."""
    chars = []
    for side in (q.num, q.den):
        acc = 1
        for f in side:
            if not f:
                return False, "a factor of the quotient vanishes identically"
            g = relabel(f, mu)
            c = _ratio(g, f)
            if c is None:
                return False, f"factor of degree {f.total_degree()} is not semi-invariant under {mu}"
            acc = acc * c
        chars.append(acc)
    if chars[0] != chars[1]:
        return False, f"numerator and denominator pick up different constants {chars[0]} and {chars[1]} under {mu}"
    return True, None


def _ratio(g: MultiPoly, f: MultiPoly):
    """The constant c with g = c*f, or None."""
    if len(g) != len(f):
        return None
    if not f:
        return 1
    p = f.ring.p
    k = f.leading_key
    if k not in g._t:
        return None
    if p:
        c = g._t[k] * pow(f._t[k], -1, p) % p
        ok = all(g._t.get(kk) == cc * c % p for kk, cc in f._t.items())
    else:
        c = Fraction(g._t[k], f._t[k])
        ok = all(g._t.get(kk) == cc * c for kk, cc in f._t.items())
    return c if ok else None
