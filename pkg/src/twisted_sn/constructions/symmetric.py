"""Elementary symmetric functions, Masuda's u and v, and frames over x1..xn."""

from __future__ import annotations

import itertools

from ..algebra.poly import MultiPoly, PolyRing
from ..algebra.ratfunc import RatFunc
from ..groups import Perm, parse_cycles, perm_sign
from .frame import Frame


def elementary_symmetric(k: int, xs, ring: PolyRing | None = None) -> MultiPoly:
    """e_k of the given variables (names or MultiPoly generators)."""
    xs = list(xs)
    if not 1 <= k <= len(xs):
        raise ValueError(f"need 1 <= k <= {len(xs)}, got {k}")
    if ring is not None:
        xs = [ring.gen(x) if isinstance(x, str) else x for x in xs]
    ring = xs[0].ring
    out = ring.zero
    for combo in itertools.combinations(xs, k):
        t = ring.one
        for x in combo:
            t = t * x
        out = out + t
    return out


def esym_text(k: int, names) -> str:
    """e_k as an expression string."""
    names = list(names)
    if k == 0:
        return "1"
    return "(" + " + ".join("*".join(c) for c in itertools.combinations(names, k)) + ")"


U_NUM = "(x1*x2**2 + x2*x3**2 + x3*x1**2 - 3*x1*x2*x3)"
V_NUM = "(x1**2*x2 + x2**2*x3 + x3**2*x1 - 3*x1*x2*x3)"
UV_DEN = "(x1**2 + x2**2 + x3**2 - x1*x2 - x2*x3 - x3*x1)"


def masuda_uv(ring: PolyRing, names=("x1", "x2", "x3")) -> tuple[RatFunc, RatFunc]:
    x1, x2, x3 = (ring.gen(n) for n in names)
    den = x1**2 + x2**2 + x3**2 - x1 * x2 - x2 * x3 - x3 * x1
    u = RatFunc(x1 * x2**2 + x2 * x3**2 + x3 * x1**2 - 3 * x1 * x2 * x3, den)
    v = RatFunc(x1**2 * x2 + x2**2 * x3 + x3**2 * x1 - 3 * x1 * x2 * x3, den)
    return u, v


def twisted_images(p: Perm, twisted: bool = True) -> dict:
    """x_i -> x_{p(i)} (even p) or a/x_{p(i)} (odd p) as expression strings."""
    odd = twisted and perm_sign(p) == -1
    return {f"x{i}": (f"a/x{p(i)}" if odd else f"x{p(i)}") for i in range(1, p.n + 1)}


def perm_hom_name(p: Perm) -> str:
    return "g" + "".join(str(i) for i in p.images)


def x_frame(n: int, char: int = 0, name: str | None = None, with_a: bool = True,
            alpha: str | None = None, homs: dict | None = None) -> Frame:
    """Frame over x1..xn with the symmetric functions s1..sn defined.

    ``homs`` maps hom names to cycle notation; each becomes the twisted
    action of that permutation (untwisted when the frame has no ``a``).
    """
    xs = [f"x{i}" for i in range(1, n + 1)]
    fr = Frame(name or f"x{n}", xs, char=char, with_a=with_a, alpha=alpha)
    for k in range(1, n + 1):
        fr.define(f"s{k}", esym_text(k, xs))
    for hname, cyc in (homs or {}).items():
        p = parse_cycles(cyc, n)
        fr.add_hom(hname, twisted_images(p, twisted=with_a), automorphism=True)
    return fr


def add_masuda(fr: Frame) -> Frame:
    fr.define("b", U_NUM.replace(" - 3*x1*x2*x3", ""))
    fr.define("bp", V_NUM.replace(" - 3*x1*x2*x3", ""))
    fr.define("u", f"{U_NUM}/{UV_DEN}")
    fr.define("v", f"{V_NUM}/{UV_DEN}")
    return fr
