"""The conic-bundle presentation of K(x1..xn)^{S_n} for n = 3, 4 in characteristic != 2.

With alpha**2 = a, z_i = (alpha - x_i)/(alpha + x_i) turns the twisted action
into z_i -> -z_{sigma(i)} for odd sigma, and the Galois involution rho
(alpha -> -alpha) into z_i -> 1/z_i.  The invariants t_k (elementary symmetric
functions of y_i = z_i/z0) and u = z0*Delta are then changed, step by step,
into coordinates where the fixed field is visibly rational.

Each stage is a frame whose base variables are the previous stage's
generators, so the later frames never expand back into x1..xn.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from ..algebra.fields import CoeffField
from ..algebra.finite import specialization_field
from ..algebra.hom import FieldHom, substitute
from ..algebra.parse import MapContext, evaluate, names_in
from ..algebra.poly import MultiPoly, PolyRing
from ..algebra.ratfunc import ratfunc
from ..groups import parse_cycles
from .frame import Frame, FrameError
from .symmetric import esym_text, twisted_images
from .v4 import require_odd

ALPHA = "al"


def _t(k: int) -> str:
    """t_k with the convention t_0 = t_1 = 1."""
    return "1" if k <= 1 else f"t{k}"


def rho_t_image(n: int, i: int) -> str:
    """rho(t_i) = t_{n-i} (t_n/t_{n-1})**i / t_n."""
    return f"{_t(n - i)}*(t{n}/t{n - 1})**{i}/t{n}"


def f_text(n: int) -> str:
    """f(t_2..t_n) in terms of D2 = Delta**2."""
    sign = "-" if (n * (n - 1) // 2) % 2 else ""
    return f"{sign}(t{n}/t{n - 1})**{(n + 1) * (n - 2) // 2}*D2/t{n}**{n - 1}"


DELTA2 = {
    3: "t2**2 - 4*t2**3 - 4*t3 + 18*t2*t3 - 27*t3**2",
    4: ("t2**2*t3**2 - 4*t2**3*t3**2 - 4*t3**3 + 18*t2*t3**3 - 27*t3**4 - 4*t2**3*t4"
        " + 16*t2**4*t4 + 18*t2*t3*t4 - 80*t2**2*t3*t4 - 6*t3**2*t4 + 144*t2*t3**2*t4"
        " - 27*t4**2 + 144*t2*t4**2 - 128*t2**2*t4**2 - 192*t3*t4**2 + 256*t4**3"),
}

STEP1_RHO = {
    3: {"t2": "t2**(-2)*t3", "t3": "t2**(-3)*t3**2", "u": "-t2**(-2)*D2/u"},
    4: {"t2": "t2*t3**(-2)*t4", "t3": "t3**(-3)*t4**2", "t4": "t3**(-4)*t4**3",
        "u": "t3**(-5)*t4**2*D2/u"},
}

G_DISPLAY = {
    3: "-1 + 4*u1 + 4*u2 - 18*u1*u2 + 27*u1**2*u2**2",
    4: ("u2/(u1*u3)*(-27*u1**2*u2**2 - 4*u1*u2*u3 + 18*u1**2*u2*u3 - 6*u1*u2**2*u3"
        " + 144*u1**2*u2**2*u3 - 192*u1*u2**3*u3 + 256*u1*u2**4*u3 + u1**2*u3**2"
        " - 4*u1**3*u3**2 + 18*u1*u2*u3**2 - 80*u1**2*u2*u3**2 - 27*u2**2*u3**2"
        " + 144*u1*u2**2*u3**2 - 128*u1**2*u2**2*u3**2 - 4*u1**2*u3**3 + 16*u1**3*u3**3)"),
}

H_DISPLAY = {
    3: ["-1 + 8*v1 - 18*v1**2 + 27*v1**4 + (18/a)*v2**2 - (54/a)*v1**2*v2**2 + (27/a**2)*v2**4",
        "(1 + v1)*(-1 + 3*v1)**3 - (18/a)*v2**2*(-1 + 3*v1**2) + (27/a**2)*v2**4"],
    4: ["1/(a*v1**2 - v3**2)*(a*v1**2*v2*(-1 + 4*v1 - 8*v2)**2*(v1**2 - 4*v2 + 4*v1*v2 + 4*v2**2)"
        " - 2*v2*v3**2*(v1**2 - 8*v1**3 + 24*v1**4 - 2*v2 + 18*v1*v2 - 80*v1**2*v2"
        " + 24*v2**2 + 144*v1*v2**2 - 128*v1**2*v2**2 - 96*v2**3 + 128*v2**4)"
        " - (1/a)*v2*v3**4*(-1 + 8*v1 - 48*v1**2 + 80*v2 + 128*v2**2) - (16/a**2)*v2*v3**6)"],
}

# the printed n = 4 display carries an extra overall factor v2
H4_PRINTED = "v2*" + H_DISPLAY[4][0]

H_PQR = ("a**2*(p - r + 2*p*r)**2*(-16*p**2 + r + 4*p*r + 4*p**2*r)"
         " - a*(-32*p**2 + r + 36*p*r - 12*p**2*r - 20*r**2 + 72*p*r**2"
         " - 96*p**2*r**2 - 8*r**3 + 32*p**2*r**3)*q**2 + 16*(-1 + r)**3*q**4")


# -- z coordinates and the rho action ------------------------------------------------------------


def z_coordinate_frame(n: int, char: int = 0) -> Frame:
    """x1..xn with alpha; the twisted action and rho on z_i = (alpha - x_i)/(alpha + x_i)."""
    require_odd(char, "the conic-bundle construction")
    xs = tuple(f"x{i}" for i in range(1, n + 1))
    fr = Frame(f"z-coordinates n={n}", xs, char=char, alpha=ALPHA)
    cyc = parse_cycles("(" + "".join(str(i) for i in range(1, n + 1)) + ")", n)
    fr.add_hom("tau", twisted_images(parse_cycles("(12)", n)), automorphism=True)
    fr.add_hom("cyc", twisted_images(cyc), automorphism=True)
    fr.add_hom("rho", {}, alpha_sign=-1, automorphism=True)
    for i in range(1, n + 1):
        fr.define(f"z{i}", f"({ALPHA} - x{i})/({ALPHA} + x{i})")
    tau = parse_cycles("(12)", n)
    fr.table("odd permutations on z", "tau", {f"z{i}": f"-z{tau(i)}" for i in range(1, n + 1)})
    if n % 2:
        fr.table("even permutations on z", "cyc", {f"z{i}": f"z{cyc(i)}" for i in range(1, n + 1)})
    else:
        fr.table("odd permutations on z", "cyc", {f"z{i}": f"-z{cyc(i)}" for i in range(1, n + 1)})
    fr.table("rho on z", "rho", {f"z{i}": f"1/z{i}" for i in range(1, n + 1)})
    return fr


def t_from_z_frame(n: int, char: int = 0) -> Frame:
    """Free z1..zn with rho and the S_n action; t_k, Delta, u and f with rho(u)*u = f."""
    require_odd(char, "the conic-bundle construction")
    zs = tuple(f"z{i}" for i in range(1, n + 1))
    fr = Frame(f"t from z n={n}", zs, char=char, alpha=ALPHA)
    fr.add_hom("rho", {z: f"1/{z}" for z in zs}, alpha_sign=-1, automorphism=True)
    tau = parse_cycles("(12)", n)
    cyc = parse_cycles("(" + "".join(str(i) for i in range(1, n + 1)) + ")", n)
    csign = "" if n % 2 else "-"
    fr.add_hom("tau", {f"z{i}": f"-z{tau(i)}" for i in range(1, n + 1)}, automorphism=True)
    fr.add_hom("cyc", {f"z{i}": f"{csign}z{cyc(i)}" for i in range(1, n + 1)}, automorphism=True)
    fr.define("z0", "(" + " + ".join(zs) + ")")
    # y_i = z_i/z0, written with a single denominator to keep the expansion small
    for k in range(1, n + 1):
        fr.define(f"t{k}", f"{esym_text(k, zs)}/z0**{k}")
    pairs = n * (n - 1) // 2
    fr.define("Delta", "*".join(f"(z{i} - z{j})" for i in range(1, n + 1) for j in range(i + 1, n + 1))
              + f"/z0**{pairs}")
    fr.define("D2", "Delta**2")
    fr.define("u", "z0*Delta")
    fr.define("f", f_text(n))
    fr.claim("t1 = 1", "t1", "1", "t1 = 1")
    fr.table("rho on t", "rho", {f"t{i}": rho_t_image(n, i) for i in range(2, n + 1)})
    # for n = 5 the exact expansion of f is too large; symbolic runs use rho_u_factored instead
    fr.claim("rho(u)*u = f", "rho(u)*u", "f", "rho on u" if n <= 4 else "rho on u (n=5)")
    for h in ("tau", "cyc"):
        fr.table("S_n fixes t and u", h, {**{f"t{i}": f"t{i}" for i in range(2, n + 1)}, "u": "u"})
    if n in STEP1_RHO:
        for k, v in STEP1_RHO[n].items():
            fr.claim(f"rho({k}) as displayed for n={n}", f"rho({k})", v, f"rho on t2..t{n}, u (n={n})")
    return fr


# -- rho(u)*u = f through factorizations -----------------------------------------------------
#
# u, f, t_{n-1} and t_n are signed products of powers of z0, e_{n-1}, the z_i and the
# differences z_i - z_j, so rho(u)*u = f can be decided on exponent vectors once rho's
# effect on each factor is known.  Those factor images are checked by substitution.
# Equal exponent vectors and signs prove the identity; a mismatch is reported as a failure.


def _factor_polys(n: int, char: int) -> tuple[PolyRing, dict]:
    zs = [f"z{i}" for i in range(1, n + 1)]
    R = PolyRing(CoeffField(char, False), zs)
    g = {z: R.gen(z) for z in zs}
    polys = {"z0": sum((g[z] for z in zs), R.zero)}
    e = R.zero
    for k in range(n):
        term = R.one
        for i, z in enumerate(zs):
            if i != k:
                term = term * g[z]
        e = e + term
    polys[f"e{n - 1}"] = e
    polys.update({z: g[z] for z in zs})
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            polys[f"d{i}{j}"] = g[f"z{i}"] - g[f"z{j}"]
    return R, polys


def _rho_factor_rules(n: int) -> dict:
    """rho(factor) as (sign, {factor: exponent})."""
    zs = [f"z{i}" for i in range(1, n + 1)]
    prod_inv = {z: -1 for z in zs}
    rules = {"z0": (1, {f"e{n - 1}": 1, **prod_inv}), f"e{n - 1}": (1, {"z0": 1, **prod_inv})}
    rules.update({z: (1, {z: -1}) for z in zs})
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rules[f"d{i}{j}"] = (-1, {f"d{i}{j}": 1, f"z{i}": -1, f"z{j}": -1})
    return rules


def _fmul(*parts) -> tuple[int, dict]:
    sign, exps = 1, {}
    for s, e, power in parts:
        sign *= s ** abs(power)
        for k, v in e.items():
            exps[k] = exps.get(k, 0) + v * power
    return sign, {k: v for k, v in exps.items() if v}


def rho_u_factored(n: int, char: int = 0, f_sign: int | None = None) -> tuple[bool, str | None]:
    """Decide rho(u)*u = f for the t-from-z frame of size n without expanding f.

    ``f_sign`` overrides the sign of f, for probing that a wrong f is rejected.
    """
    require_odd(char, "the conic-bundle construction")
    R, polys = _factor_polys(n, char)
    rules = _rho_factor_rules(n)
    rho = FieldHom(R, R, {z: ratfunc(R.one) / ratfunc(R.gen(z)) for z in R.vars.names})
    for name, (sign, exps) in rules.items():
        lhs = substitute(ratfunc(polys[name]), rho)
        rhs = ratfunc(R.const(sign))
        for k, v in exps.items():
            rhs = rhs * ratfunc(polys[k]) ** v if v > 0 else rhs / ratfunc(polys[k]) ** (-v)
        if lhs != rhs:
            return False, f"rho({name}) is not the recorded factor image"
    zs = [f"z{i}" for i in range(1, n + 1)]
    pairs = n * (n - 1) // 2
    diffs = {f"d{i}{j}": 1 for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    delta = (1, {**diffs, "z0": -pairs})
    u = _fmul((1, {"z0": 1}, 1), (*delta, 1))
    t_last = (1, {**{z: 1 for z in zs}, "z0": -n})
    t_prev = (1, {f"e{n - 1}": 1, "z0": -(n - 1)})
    sign_f = f_sign if f_sign is not None else (-1 if pairs % 2 else 1)
    k = (n + 1) * (n - 2) // 2
    f = _fmul((sign_f, {}, 1), (*t_last, k), (*t_prev, -k), (*delta, 2), (*t_last, -(n - 1)))
    rho_u = _fmul(*[(*rules[name], e) for name, e in u[1].items()], (u[0], {}, 1))
    lhs = _fmul((*rho_u, 1), (*u, 1))
    if lhs != f:
        return False, f"rho(u)*u factors as {lhs}, f as {f}"
    return True, None


def discriminant_frame(n: int, char: int = 0) -> Frame:
    """Free y1..y(n-1) with y_n = 1 - (y1 + ... + y(n-1)), so t1 = 1; Delta**2 in t2..tn.

    Delta**2 is a polynomial in the y_i, and the y_i other than y_n are
    algebraically independent, so checking the display here checks it in the
    z coordinates too.
    """
    ys = [f"y{i}" for i in range(1, n + 1)]
    fr = Frame(f"discriminant n={n}", tuple(ys[:-1]), char=char, with_a=False)
    fr.define(ys[-1], "(1 - " + " - ".join(ys[:-1]) + ")")
    for k in range(1, n + 1):
        fr.define(f"t{k}", esym_text(k, ys))
    fr.define("D2", "*".join(f"(y{i} - y{j})**2" for i in range(1, n + 1) for j in range(i + 1, n + 1)))
    fr.claim("t1 = 1", "t1", "1", "Delta**2 in t")
    fr.claim("Delta**2 in t", "D2", DELTA2[n], "Delta**2 in t")
    return fr


# -- the u_i and recovery of t ----------------------------------------------------------------------


def u_definitions(n: int) -> dict:
    """u_1..u_{n-1} in terms of t_2..t_n."""
    m = n // 2
    d = {}
    for i in range(1, m):
        d[f"u{i}"] = f"t{i + 1}"
        d[f"u{n - i}"] = f"{_t(n - i - 1)}*t{n}**{i}/t{n - 1}**{i + 1}"
    if n % 2:
        d[f"u{m}"] = f"t{m + 1}"
        d[f"u{m + 1}"] = f"{_t(m)}*t{n}**{m}/t{n - 1}**{m + 1}"
    else:
        d[f"u{m}"] = f"t{n}/t{n - 1}"
    return d


def t_frame(n: int, char: int = 0, with_u: bool = True) -> Frame:
    """Free t2..tn (and u) with alpha; rho acts by the verified table on t."""
    require_odd(char, "the conic-bundle construction")
    base = tuple(f"t{i}" for i in range(2, n + 1)) + (("u",) if with_u else ())
    fr = Frame(f"t-frame n={n}", base, char=char, alpha=ALPHA)
    images = {f"t{i}": rho_t_image(n, i) for i in range(2, n + 1)}
    if with_u:
        images["u"] = f_text(n).replace("D2", f"({DELTA2[n]})") + "/u"
    fr.add_hom("rho", images, alpha_sign=-1, automorphism=True)
    if n in DELTA2:
        fr.define("D2", DELTA2[n])
        fr.define("f", f_text(n))
    for name, expr in u_definitions(n).items():
        fr.define(name, expr)
    return fr


def lemma32_frame(n: int, char: int = 0) -> Frame:
    """The identities recovering t_2..t_n from u_1..u_{n-1}."""
    fr = t_frame(n, char, with_u=False)
    m = n // 2
    fr.table("rho on u_i", "rho", {f"u{i}": f"u{n - i}" for i in range(1, n)})
    fr.claim("rho^2 = 1 on t", f"rho(rho(t{n}))", f"t{n}", "rho on u_i")

    def u(k: int) -> str:
        # the n = 3 identities use u_0 = u_3 = 1
        return "1" if k <= 0 or k >= n else f"u{k}"

    if n % 2:
        fr.claim("t_n from u", f"({u(m)}**{m + 1}/{u(m - 1)}**{m})*{u(m + 1)}**{m}*(1/{u(m + 2)})**{m + 1}",
                 f"t{n}", "recovery identities")
        fr.claim("t_n from u, middle form",
                 f"({_t(m + 1)}**{m + 1}/{_t(m)}**{m})*({_t(m)}*t{n}**{m}/t{n - 1}**{m + 1})**{m}"
                 f"*(t{n - 1}**{m}/({_t(m + 1)}*t{n}**{m - 1}))**{m + 1}", f"t{n}", "recovery identities")
        fr.claim("t_(n-1) from u", f"t{n}*({u(m - 1)}/{u(m)})*{u(m + 2)}*(1/{u(m + 1)})", f"t{n - 1}",
                 "recovery identities")
        for i in range(1, m - 1):
            fr.claim(f"t{n - i - 1} from u", f"u{n - i}*t{n - 1}**{i + 1}/t{n}**{i}", f"t{n - i - 1}",
                     "recovery identities")
        for i in range(1, m + 1):
            fr.claim(f"t{i + 1} = u{i}", f"u{i}", f"t{i + 1}", "recovery identities")
    else:
        for k in range(m, 2 * m - 2):
            fr.claim(f"u{k + 1}/u{k + 2}", f"u{k + 1}/u{k + 2}", f"(t{k}/t{k + 1})*u{m}", "recovery identities")
            fr.claim(f"t{k + 1} from u", f"t{k}*u{m}*u{k + 2}/u{k + 1}", f"t{k + 1}", "recovery identities")
        fr.claim(f"u{n - 1} in t", f"u{n - 1}", f"{_t(n - 2)}*u{m}/t{n - 1}", "recovery identities")
        fr.claim(f"t{n - 1} from u", f"{_t(n - 2)}*u{m}/u{n - 1}", f"t{n - 1}", "recovery identities")
        fr.claim(f"t{n} from u", f"u{m}*t{n - 1}", f"t{n}", "recovery identities")
        for i in range(1, m):
            fr.claim(f"t{i + 1} = u{i}", f"u{i}", f"t{i + 1}", "recovery identities")
    if n in G_DISPLAY:
        fr.claim(f"g(u) for n={n}", "f", G_DISPLAY[n], "g in u")
    return fr


# -- v_i, h and the conic --------------------------------------------------


def conic_frame(n: int, char: int = 0) -> Frame:
    """t-frame with u; v_i, h, and the conic coordinates x, y with x**2 - a*y**2 = h."""
    if n not in (3, 4):
        raise FrameError("the conic frames are built for n = 3 and n = 4")
    fr = t_frame(n, char)
    if n == 3:
        fr.define("v1", "(u1 + u2)/2")
        fr.define("v2", f"{ALPHA}*(u1 - u2)/2")
        vs = ("v1", "v2")
    else:
        fr.define("v1", "(u1 + u3)/2")
        fr.define("v2", "u2")
        fr.define("v3", f"{ALPHA}*(u1 - u3)/2")
        vs = ("v1", "v2", "v3")
    fr.define("h", "f")
    fr.define("x", "(u + h/u)/2")
    fr.define("y", f"(u - h/u)/(2*{ALPHA})")
    fr.table("rho fixes v", "rho", {v: v for v in vs})
    fr.claim("rho(u)*u = h", "rho(u)*u", "h", "rho fixes v")
    note = "the printed prefactor has an extra v2" if n == 4 else ""
    for i, disp in enumerate(H_DISPLAY[n]):
        fr.claim(f"h in v (form {i + 1})", "h", disp, "h in v", note=note)
    fr.table("rho fixes x, y", "rho", {"x": "x", "y": "y"})
    fr.claim("conic relation", "x**2 - a*y**2", "h", "conic relation")
    if n == 4:
        fr.define("p", "(1/u1 + 1/u3)*u2/2")
        fr.define("q", f"{ALPHA}/2*(1/u1 - 1/u3)*u2")
        fr.define("r", "4*u2")
        fr.define("H", H_PQR)
        # the printed U = u*r/(8*(a*p**2 - q**2)) gives rho(U)*U = r**4*H/(4096*(a*p**2 - q**2)**4)
        fr.define("U", "8*u*(a*p**2 - q**2)/r")
        fr.define("X", "(U + H/U)/2")
        fr.define("Y", f"(U - H/U)/(2*{ALPHA})")
        fr.claim("p in v", "p", "a*v1*v2/(a*v1**2 - v3**2)", "p, q, r in v")
        fr.claim("q in v", "q", "-a*v2*v3/(a*v1**2 - v3**2)", "p, q, r in v")
        fr.claim("r in v", "r", "4*v2", "p, q, r in v")
        fr.claim("v1 from p, q, r", "v1", "a*p*r/(4*(a*p**2 - q**2))", "v from p, q, r")
        fr.claim("v2 from p, q, r", "v2", "r/4", "v from p, q, r")
        fr.claim("v3 from p, q, r", "v3", "-a*q*r/(4*(a*p**2 - q**2))", "v from p, q, r",
                 note="the printed back-solve has p in place of q in the numerator")
        fr.claim("rho(u)*u in p, q, r", "rho(u)*u", "r**2/(64*(a*p**2 - q**2)**2)*H", "rho in p, q, r")
        fr.table("rho in p, q, r", "rho", {"p": "p", "q": "q", "r": "r"})
        fr.claim("rho(U)*U = H", "rho(U)*U", "H", "rho in p, q, r",
                 note="holds for U = 8*u*(a*p**2 - q**2)/r, the reciprocal of the printed scaling")
        fr.table("rho fixes X, Y", "rho", {"X": "X", "Y": "Y"})
        fr.claim("conic relation in p, q, r", "X**2 - a*Y**2", "H", "conic relation")
    return fr


# -- the desingularization chains ----------------------------------------------------------


N3_CHAIN = [
    # (label, lhs, rhs, table)
    ("conic in v1, v2, factored", "x**2 - a*y**2",
     "(1 + v1)*(-1 + 3*v1)**3 - (18/a)*v2**2*(-1 + 3*v1**2) + (27/a**2)*v2**4", "n=3 conic"),
    ("conic in T1, T2", "3*x**2 - 3*a*y**2",
     "-3 + 8*T1 - 6*T1**2 + T1**4 + 6*a*T2**2 - 2*a*T1**2*T2**2 + a**2*T2**4", "n=3 T1, T2"),
    ("conic in T2, T3", "3*x**2 - 3*a*y**2",
     "4*a*T2**2 + a**2*T2**4 - 4*a*T2**2*T3 - 2*a*T2**2*T3**2 + 4*T3**3 + T3**4", "n=3 T2, T3"),
    ("after X2, Y2, T4 form 1", "3*X2**2 - 3*a*Y2**2",
     "4*T3 + T3**2 + 4*a*T4**2 - 4*a*T3*T4**2 - 2*a*T3**2*T4**2 + a**2*T3**2*T4**4", "n=3 X2, Y2, T4"),
    ("after X2, Y2, T4 form 2", "3*X2**2 - 3*a*Y2**2",
     "(T3 - a*T3*T4**2)**2 + 4*(T3 - a*T3*T4**2) + 4*a*T4**2", "n=3 X2, Y2, T4"),
    ("after X2, Y2, T4 form 3", "3*X2**2 - 3*a*Y2**2",
     "(T3 - a*T3*T4**2)*(4 + T3 - a*T3*T4**2) + 4*a*T4**2", "n=3 X2, Y2, T4"),
    ("final in S1, S2", "3*X3**2 - 3*a*Y3**2", "S1 + 4*a*S2**2", "n=3 S1, S2"),
    ("after X4, Y4, T5", "3*X4**2 - 3*a*Y4**2",
     "1 - 2*a*T4**2 + a**2*T4**4 + 4*T5 - 4*a*T4**2*T5 + 4*a*T4**2*T5**2", "n=3 X4, Y4, T5"),
    ("after X5, Y5, T6", "3*X5**2 - 3*a*Y5**2", "1 + 4*T6 + 4*a*T4**2*T6**2", "n=3 X5, Y5, T6"),
]

N3_BACKSOLVE = [
    ("T1 - 1 = T3", "T1 - 1", "T3"),
    ("W from S1", "4/(S1 - 1)", "T3 - a*T3*T4**2"),
    ("T4 from S1, S2", "S2*4/(S1 - 1)", "T4"),
    ("T3 from S1, T4", "4/(S1 - 1)/(1 - a*T4**2)", "T3"),
    ("X2 from X3", "X3*4/(S1 - 1)", "X2"),
    ("x from X4", "X4*T3**2", "x"),
    ("T3 from T5", "1/T5", "T3"),
    ("T2 from T4, T3", "T4*T3", "T2"),
    ("T5 from T6", "T6*(1 - a*T4**2)", "T5"),
    ("X4 from X5", "X5*(1 - a*T4**2)", "X4"),
]


def n3_chain_frame(char: int = 0) -> Frame:
    """v1, v2, u, alpha with x, y of the conic and every substitution of the n = 3 chain."""
    require_odd(char, "the n = 3 conic chain")
    fr = Frame("n=3 chain", ("v1", "v2", "u"), char=char, alpha=ALPHA)
    fr.define("h", H_DISPLAY[3][0])
    fr.define("x", "(u + h/u)/2")
    fr.define("y", f"(u - h/u)/(2*{ALPHA})")
    if char == 3:
        fr.claim("char 3 conic", "x**2 - a*y**2", "-1 - v1", "n=3 char 3")
        return fr
    defs = {
        "T1": "3*v1", "T2": "3*v2/a", "T3": "-1 + T1",
        "X2": "x/T3", "Y2": "y/T3", "T4": "T2/T3",
        "W": "T3 - a*T3*T4**2",
        "X3": "X2/W", "Y3": "Y2/W", "S1": "(4 + W)/W", "S2": "T4/W",
        "X4": "x/T3**2", "Y4": "y/T3**2", "T5": "1/T3",
        "X5": "X4/(1 - a*T4**2)", "Y5": "Y4/(1 - a*T4**2)", "T6": "T5/(1 - a*T4**2)",
    }
    for k, v in defs.items():
        fr.define(k, v)
    for label, lhs, rhs, table in N3_CHAIN:
        fr.claim(label, lhs, rhs, table)
    for label, lhs, rhs in N3_BACKSOLVE:
        fr.claim(label, lhs, rhs, "n=3 back-solves")
    return fr


N4_CHAIN = [
    ("conic in X, Y", "X**2 - a*Y**2", "H", "n=4 conic"),
    ("after p2", "X2**2 - a*Y2**2",
     "a**2*p2**2*(-16*p2**2 + r - 28*p2*r + 4*p2**2*r - 8*r**2 + 16*p2*r**2 + 16*r**3)"
     " - a*(-32*p2**2 + r - 28*p2*r - 12*p2**2*r - 12*r**2 + 120*p2*r**2"
     " - 96*p2**2*r**2 + 48*r**3 - 48*p2*r**3 + 32*p2**2*r**3 - 64*r**4 + 64*p2*r**4)*q**2"
     " + 16*(-1 + r)**3*(1 + 2*r)**2*q**4", "n=4 p2"),
    ("after p3", "X3**2 - a*Y3**2",
     "a*r*(-1 + 4*r)**2*(-1 + a*p3**2 + 4*r)"
     " + 4*a*p3*r*(7 - 7*a*p3**2 - 30*r + 4*a*p3**2*r + 12*r**2 - 16*r**3)*q"
     " + 4*(-1 + a*p3**2 - 4*r - 4*r**2)*(4 - 4*a*p3**2 - 12*r + a*p3**2*r + 12*r**2 - 4*r**3)*q**2",
     "n=4 p3"),
    ("after q2", "X4**2 - a*Y4**2",
     "4*a*r2*(-1 + r2)**2*(-1 + a*p3**2 + r2)*q2**2"
     " + 4*a*p3*r2*(28 - 28*a*p3**2 - 30*r2 + 4*a*p3**2*r2 + 3*r2**2 - r2**3)*q2"
     " + (-4 + 4*a*p3**2 - 4*r2 - r2**2)*(64 - 64*a*p3**2 - 48*r2 + 4*a*p3**2*r2 + 12*r2**2 - r2**3)",
     "n=4 q2"),
    ("after q3", "X5**2 - a*Y5**2",
     "(2 + r2)**2*(-1 + a*p3**2 + r2)*(4 - 4*a*p3**2 - 5*r2 + r2**2)**3"
     " + a*r2*(-1 + r2)**4*(-1 + a*p3**2 + r2)**3*q3**2", "n=4 q3"),
    ("after q4", "X6**2 - a*Y6**2",
     "(-1 + a*p3**2 + r2)*((4 - 4*a*p3**2 - 5*r2 + r2**2) + a*r2*q4**2)", "n=4 q4"),
    ("after r3", "X7**2 - a*Y7**2",
     "(1 + r3)*(-4 - 5*r3 + a*q4**2*r3 - r3**2 + a*p3**2*r3**2)", "n=4 r3"),
    ("after p4", "X7**2 - a*Y7**2",
     "(1 + r3)*(-4 - 5*r3 + a*q4**2*r3 - r3**2 + a*p4**2)", "n=4 p4"),
    ("after p5", "X7**2 - a*Y7**2",
     "r4*(a*p5**2 - 2*a*p5*q4 - 3*r4 + a*q4**2*r4 - r4**2)", "n=4 p5"),
    ("final", "X8**2 - a*Y8**2",
     "r5*(a*p5 - 2*a*q4 - 3*r5 + a*q4**2*r5 - p5*r5**2)", "n=4 final"),
]

N4_Q3_SHIFT = ("p3*(28 - 28*a*p3**2 - 30*r2 + 4*a*p3**2*r2 + 3*r2**2 - r2**3)"
               "/((-1 + r2)**2*(-1 + a*p3**2 + r2))")

N4_BACKSOLVE = [
    ("p from p2", "(p2 + r)/(1 + 2*r)", "p"),
    ("q from p2, p3", "p2/p3", "q"),
    ("q from q2", "1/q2", "q"),
    ("r from r2", "r2/4", "r"),
    ("q2 from q3", f"(q3 - {N4_Q3_SHIFT})/2", "q2"),
    ("q3 from q4", "q4*(2 + r2)*(4 - 4*a*p3**2 - 5*r2 + r2**2)/((-1 + r2)**2*(-1 + a*p3**2 + r2))", "q3"),
    ("r2 from r3", "r3*(-1 + a*p3**2)", "r2"),
    ("p3 from p4", "p4/r3", "p3"),
    ("p4 from p5", "p5 - q4", "p4"),
    ("r3 from r4", "r4 - 1", "r3"),
    ("r4 from r5", "r5*p5", "r4"),
]


def n4_chain_frame(char: int = 0) -> Frame:
    """p, q, r, U, alpha with X, Y of the conic and every substitution of the n = 4 chain."""
    require_odd(char, "the n = 4 conic chain")
    fr = Frame("n=4 chain", ("p", "q", "r", "U"), char=char, alpha=ALPHA)
    defs = {
        "H": H_PQR,
        "X": "(U + H/U)/2", "Y": f"(U - H/U)/(2*{ALPHA})",
        "p2": "p - r + 2*p*r", "X2": "X*(1 + 2*r)", "Y2": "Y*(1 + 2*r)",
        "p3": "p2/q", "X3": "X2/q", "Y3": "Y2/q",
        "q2": "1/q", "r2": "4*r", "X4": "4*X3/q", "Y4": "4*Y3/q",
        "q3": f"2*q2 + {N4_Q3_SHIFT}",
        "X5": "X4*(-1 + r2)*(-1 + a*p3**2 + r2)", "Y5": "Y4*(-1 + r2)*(-1 + a*p3**2 + r2)",
        "q4": "q3*(-1 + r2)**2*(-1 + a*p3**2 + r2)/((2 + r2)*(4 - 4*a*p3**2 - 5*r2 + r2**2))",
        "X6": "X5/((2 + r2)*(4 - 4*a*p3**2 - 5*r2 + r2**2))",
        "Y6": "Y5/((2 + r2)*(4 - 4*a*p3**2 - 5*r2 + r2**2))",
        "r3": "r2/(-1 + a*p3**2)", "X7": "X6/(-1 + a*p3**2)", "Y7": "Y6/(-1 + a*p3**2)",
        "p4": "p3*r3", "p5": "p4 + q4", "r4": "r3 + 1",
        "r5": "r4/p5", "X8": "X7/p5", "Y8": "Y7/p5",
    }
    for k, v in defs.items():
        fr.define(k, v)
    for label, lhs, rhs, table in N4_CHAIN:
        fr.claim(label, lhs, rhs, table)
    for label, lhs, rhs in N4_BACKSOLVE:
        fr.claim(label, lhs, rhs, "n=4 back-solves")
    return fr


# -- relations as polynomials: linearity and the Jacobian criterion -------------------------


def relation_poly(lhs: str, rhs: str, names, char: int = 0) -> MultiPoly:
    """lhs - rhs as a polynomial over the given variable names; ``a``, if present, must come last."""
    ring = PolyRing(CoeffField(char, "a" in names), list(names))
    env = {n: ratfunc(ring.gen(n), ring) for n in names}
    val = ratfunc(evaluate(f"({lhs}) - ({rhs})", MapContext(env)), ring)
    num, den = val.num, val.den
    if not den.is_constant():
        raise FrameError(f"{lhs} - ({rhs}) is not a polynomial in {', '.join(names)}")
    return num * ring.field.coerce(Fraction(1) / Fraction(den.constant_value()) if not ring.p
                                   else pow(den.constant_value(), -1, ring.p))


def relation_names(lhs: str, rhs: str) -> list[str]:
    names = sorted(names_in(lhs) | names_in(rhs))
    return [n for n in names if n != "a"] + ["a"]


def verify_singular_point(relation: MultiPoly, point: dict) -> bool:
    """True iff the relation and all of its partial derivatives vanish at the point.

    Variables missing from ``point`` stay symbolic, so the test holds for all of
    their values.
    """
    ring = relation.ring
    for name in point:
        if name not in ring.vars.index:
            raise FrameError(f"{name!r} is not a variable of the relation")
    polys = [relation] + [relation.derivative(v) for v in ring.vars.names]
    return all(not p.evaluate(point) for p in polys)


@dataclass
class SingularCase:
    label: str
    lhs: str
    rhs: str
    point: dict  # name -> int, or "sqrt_a", "-sqrt_a", "inv_sqrt_a", "-inv_sqrt_a", "random"
    expected: bool
    over_fp: bool = False


SINGULAR_CASES = [
    SingularCase("conic in T1, T2 at x = y = T2 = 0, T1 = 1", N3_CHAIN[1][1], N3_CHAIN[1][2],
                 {"x": 0, "y": 0, "T1": 1, "T2": 0}, True),
    SingularCase("conic in T1, T2 at x = y = T2 = 0, T1 = 0 (not singular)", N3_CHAIN[1][1], N3_CHAIN[1][2],
                 {"x": 0, "y": 0, "T1": 0, "T2": 0}, False),
    SingularCase("after X4, Y4, T5 at X4 = Y4 = T5 = 0, T4 = 1/sqrt(a)", N3_CHAIN[7][1], N3_CHAIN[7][2],
                 {"X4": 0, "Y4": 0, "T5": 0, "T4": "inv_sqrt_a"}, True, True),
    SingularCase("after X4, Y4, T5 at X4 = Y4 = T5 = 0, T4 = -1/sqrt(a)", N3_CHAIN[7][1], N3_CHAIN[7][2],
                 {"X4": 0, "Y4": 0, "T5": 0, "T4": "-inv_sqrt_a"}, True, True),
    SingularCase("after q4 at X6 = Y6 = r2 = 0, p3 = 1/sqrt(a)", N4_CHAIN[5][1], N4_CHAIN[5][2],
                 {"X6": 0, "Y6": 0, "r2": 0, "p3": "inv_sqrt_a", "q4": "random"}, True, True),
    SingularCase("after q4 at X6 = Y6 = r2 = 0, p3 = -1/sqrt(a)", N4_CHAIN[5][1], N4_CHAIN[5][2],
                 {"X6": 0, "Y6": 0, "r2": 0, "p3": "-inv_sqrt_a", "q4": "random"}, True, True),
    SingularCase("after p4 at X7 = Y7 = 0, r3 = -1, p4 = -q4", N4_CHAIN[7][1], N4_CHAIN[7][2],
                 {"X7": 0, "Y7": 0, "r3": -1, "q4": "random", "p4": "-q4"}, True, True),
    SingularCase("after p4 at X7 = Y7 = 0, r3 = -1, p4 = q4", N4_CHAIN[7][1], N4_CHAIN[7][2],
                 {"X7": 0, "Y7": 0, "r3": -1, "q4": "random", "p4": "q4"}, True, True),
    SingularCase("after p5 at X7 = Y7 = p5 = r4 = 0", N4_CHAIN[8][1], N4_CHAIN[8][2],
                 {"X7": 0, "Y7": 0, "p5": 0, "r4": 0}, True),
]

LINEAR_IN = [
    ("final in S1, S2 is linear in S1", N3_CHAIN[6][1], N3_CHAIN[6][2], "S1", None),
    ("after X5, Y5, T6: linear in T6 after T4 = W/T6", N3_CHAIN[8][1], N3_CHAIN[8][2].replace("T4**2*T6**2", "W**2"),
     "T6", None),
    ("n=4 final is linear in p5", N4_CHAIN[9][1], N4_CHAIN[9][2], "p5", None),
]


def sqrt_mod(c: int, p: int) -> int | None:
    """A square root of c modulo a prime p = 3 mod 4, or None."""
    if p % 4 != 3:
        raise ValueError("sqrt_mod expects p = 3 mod 4")
    r = pow(c % p, (p + 1) // 4, p)
    return r if r * r % p == c % p else None


def resolve_point(case: SingularCase, rng: random.Random, p: int) -> dict:
    """Concrete coordinates over F_p; a is set to c**2 for a random c."""
    c = rng.randrange(2, p - 1)
    inv = pow(c, -1, p)
    vals = {"a": c * c % p} if case.over_fp else {}
    randoms = {}
    for k, v in case.point.items():
        if v == "random":
            randoms[k] = rng.randrange(1, p)
    for k, v in case.point.items():
        if isinstance(v, int):
            vals[k] = v % p
        elif v == "random":
            vals[k] = randoms[k]
        elif v in ("inv_sqrt_a", "-inv_sqrt_a"):
            vals[k] = inv if v[0] != "-" else (-inv) % p
        elif v.lstrip("-") in randoms:
            vals[k] = (-randoms[v[1:]]) % p if v[0] == "-" else randoms[v]
        else:
            raise FrameError(f"unknown point coordinate {v!r}")
    return vals


def check_singular_case(case: SingularCase, rng: random.Random) -> tuple[bool, str | None]:
    """Run one singular-point claim; returns (agrees with the claim, detail)."""
    names = relation_names(case.lhs, case.rhs)
    if case.over_fp:
        p = specialization_field(0).p
        rel = relation_poly(case.lhs, case.rhs, names, p)
        pt = resolve_point(case, rng, p)
    else:
        rel = relation_poly(case.lhs, case.rhs, names, 0)
        pt = dict(case.point)
    got = verify_singular_point(rel, pt)
    if got != case.expected:
        return False, f"{case.label}: singular = {got}, expected {case.expected} at {pt}"
    return True, None


def smooth_point_case(rng: random.Random) -> tuple[bool, str | None]:
    """A random point on the T1, T2 conic over F_p must not be singular."""
    p = specialization_field(0).p
    lhs, rhs = N3_CHAIN[1][1], N3_CHAIN[1][2]
    names = relation_names(lhs, rhs)
    rel = relation_poly(lhs, rhs, names, p)
    for _ in range(200):
        pt = {n: rng.randrange(1, p) for n in ("y", "T1", "T2", "a")}
        rest = rel.evaluate(pt)  # polynomial in x: 3*x**2 + c
        c0 = rest.evaluate({"x": 0}).constant_value()
        x = sqrt_mod(-c0 * pow(3, -1, p), p)
        if x is None:
            continue
        pt["x"] = x
        if rel.evaluate(pt):
            return False, "constructed point is not on the relation"
        if verify_singular_point(rel, pt):
            return False, f"random point {pt} on the T1, T2 conic reported singular"
        return True, None
    return False, "no point on the T1, T2 conic found in 200 draws"


def check_linear(lhs: str, rhs: str, var: str) -> tuple[bool, str | None]:
    names = relation_names(lhs, rhs)
    rel = relation_poly(lhs, rhs, names, 0)
    d = rel.degree(var)
    if d != 1:
        return False, f"degree in {var} is {d}"
    return True, None

