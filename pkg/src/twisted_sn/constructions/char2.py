"""Characteristic 2: invariants of A_3 and A_4 through b_3, b_4 and the tau tables.

In characteristic 2, K[x]^{A_n} is free of rank 2 over K[s_1..s_n] with basis
{1, b_n}, where b_n is an A_n orbit sum.  The frames below check the
quadratic relation satisfied by b_n and then follow tau = (12) through the
changes of variables down to the tau table on r, A, B, C.
"""

from __future__ import annotations

from ..groups import alternating_group
from .frame import Frame, FrameError
from .small_n import N3_TAU_UV, N3_TAU_W
from .symmetric import U_NUM, UV_DEN, V_NUM, x_frame

B3 = "x1*x2**2 + x2*x3**2 + x3*x1**2"
B4 = ("x1**2*x2**3*x3 + x1**3*x2*x3**2 + x1*x2**2*x3**3 + x1**3*x2**2*x4 + x2**3*x3**2*x4"
      " + x1**2*x3**3*x4 + x1*x2**3*x4**2 + x1**3*x3*x4**2 + x2*x3**3*x4**2 + x1**2*x2*x4**3"
      " + x2**2*x3*x4**3 + x1*x3**2*x4**3")
REL_B3 = "b3**2 + b3*s1*s2 + s2**3 + b3*s3 + s1**3*s3 + s3**2"
REL_B4 = ("b4**2 + b4*s1*s2*s3 + b4*s3**2 + s2**3*s3**2 + s1**3*s3**3 + s3**4 + b4*s1**2*s4"
          " + s1**2*s2**3*s4 + s1**4*s4**2")

TAU_S_B3 = {"s1": "a*s2/s3", "s2": "a**2*s1/s3", "s3": "a**3/s3", "b3": "a**3*b3/s3**2"}
TAU_S_B4 = {"s1": "a*s3/s4", "s2": "a**2*s2/s4", "s3": "a**3*s1/s4", "s4": "a**4/s4",
            "b4": "a**6*(b4 + s1*s2*s3 + s3**2 + s1**2*s4)/s4**3"}

T_DEFS = {
    "t1": "s1*s3/s2", "t2": "s2", "t3": "s3",
    "t4": "(s1*s2*s3 + s3**2 + s1**2*s4)/s2**2",
    # printed with denominator s2; the relation below and u5 of the lemma need s2**2
    "t5": "(b4 + s2**3)/s2**2",
}
REL_T = "t1**3 + t1**2*t2 + t1*t2**2 + t2**3 + t2*t4**2 + t2*t4*t5 + t2*t5**2"
U_DEFS = {"u1": "t1", "u2": "t2/t1", "u3": "t3", "u4": "t4/(t1 + t2)", "u5": "t5/(t1 + t2)"}
REL_U = "u2*(u4**2 + u4*u5 + u5**2 + 1) + 1"
LEMMA42 = {
    "u1": "s1*s3/s2", "u3": "s3",
    "u4": "(s1*s2*s3 + s3**2 + s1**2*s4)/(s2*(s2**2 + s1*s3))",
    "u5": "(b4 + s2**3)/(s2*(s2**2 + s1*s3))",
}

QUAD = "(r**2 + r*s + s**2 + 1)"
# The printed table is consistent only for p = u1/u3 = s1/s2 and with the
# factor (r + 1)*QUAD + r where (r + 1)*QUAD + 1 is printed, in tau(q) and in t.
P_DEF = "u1/u3"
P_PRINTED = "u1"
LINEAR = f"((r + 1)*{QUAD} + r)"
LINEAR_PRINTED = f"((r + 1)*{QUAD} + 1)"
TAU_PQRS = {
    "p": f"{QUAD}/(a*p)",
    "q": f"a**3*p**6*q/({QUAD}**3 + p**3*q*{LINEAR})",
    "r": "r",
    "s": "s + r",
}
TAU_Q_PRINTED = f"a**3*p**6*q/({QUAD}**3 + p**3*q*{LINEAR_PRINTED})"
T_DEF = f"{QUAD}**3/(p**3*q*{LINEAR})"
TAU_PTRS = {"p": f"{QUAD}/(a*p)", "t": "t + 1", "r": "r", "s": "s + r"}
TAU_RABC = {"r": "r", "A": "A", "B": "1/B", "C": "1/a*((r**2 + 1)*(1/B + B) + r**2)/C"}


def require_char2(char: int, what: str) -> None:
    if char != 2:
        raise FrameError(f"{what} is only defined in characteristic 2")


def a4_orbit_sum_text() -> str:
    """The sum of sigma(x1*x2**2*x3**3) over A_4, with sigma acting by x_i -> x_{sigma(i)}."""
    terms = []
    for g in alternating_group(4):
        terms.append(f"x{g(1)}*x{g(2)}**2*x{g(3)}**3")
    return " + ".join(sorted(terms))


def revoy_n3_frame(char: int = 2) -> Frame:
    """b3, its quadratic relation over s1, s2, s3 and Masuda's u, v through b3."""
    require_char2(char, "the b3 relation")
    fr = x_frame(3, char, name="b3 (char 2)", with_a=False, homs={"sigma": "(123)"})
    fr.define("b3", B3)
    fr.define("u", "(b3 + s3)/(s1**2 + s2)")
    fr.define("v", "(b3 + s1*s2)/(s1**2 + s2)")
    fr.claim("b3 relation", REL_B3, "0", "b3 relation")
    fr.claim("sigma(b3)", "sigma(b3)", "b3", "b3 relation")
    fr.claim("u through b3", "u", f"{U_NUM}/{UV_DEN}", "u, v through b3")
    fr.claim("v through b3", "v", f"{V_NUM}/{UV_DEN}", "u, v through b3")
    return fr


def revoy_n4_frame(char: int = 2) -> Frame:
    """b4 as displayed, as an A_4 orbit sum, and its quadratic relation."""
    require_char2(char, "the b4 relation")
    fr = x_frame(4, char, name="b4 (char 2)", with_a=False,
                 homs={"c3": "(123)", "c3b": "(234)"})
    fr.define("b4", B4)
    fr.claim("b4 is the A4 orbit sum", "b4", a4_orbit_sum_text(), "b4 relation")
    fr.claim("b4 relation", REL_B4, "0", "b4 relation")
    fr.claim("(123) fixes b4", "c3(b4)", "b4", "b4 relation")
    fr.claim("(234) fixes b4", "c3b(b4)", "b4", "b4 relation")
    return fr


def char2_n3_frame(char: int = 2) -> Frame:
    """n = 3 in characteristic 2 with u, v written through b3."""
    require_char2(char, "the characteristic 2 n = 3 tables")
    fr = x_frame(3, char, name="n=3 (char 2)", homs={"tau": "(12)"})
    fr.define("b3", B3)
    fr.define("u", "(b3 + s3)/(s1**2 + s2)")
    fr.define("v", "(b3 + s1*s2)/(s1**2 + s2)")
    fr.define("w", "u/v")
    fr.table("tau on s, b3", "tau", TAU_S_B3)
    for name, img in N3_TAU_UV.items():
        fr.claim(f"tau({name}) [s3,u,v]", f"tau({name})", img, "tau on s3, u, v (char 2)")
    for name, img in N3_TAU_W.items():
        fr.claim(f"tau({name}) [s3,v,w]", f"tau({name})", img, "tau on s3, v, w (char 2)")
    return fr


def reduction_frame(char: int = 2) -> Frame:
    """s1..s4 and b4 through t1..t5 and u1..u5; the relations and u1, u3, u4, u5 in s and b4."""
    require_char2(char, "the t/u reduction")
    fr = x_frame(4, char, name="t/u reduction (char 2)", with_a=False)
    fr.define("b4", B4)
    for k, v in {**T_DEFS, **U_DEFS}.items():
        fr.define(k, v)
    fr.claim("t relation", REL_T, "0", "t relation")
    fr.claim("u relation", REL_U, "0", "u relation")
    for k, v in LEMMA42.items():
        fr.claim(f"{k} in s, b4", k, v, "u1, u3, u4, u5 in s, b4")
    # K(s1..s4, b4) = K(t1..t5): s and b4 back from t
    fr.claim("s1 from t", "t1*t2/t3", "s1", "t back-solve")
    fr.claim("s4 from t", "(t4*t2**2 + t1*t2**2 + t3**2)*t3**2/(t1*t2)**2", "s4", "t back-solve")
    fr.claim("b4 from t", "t5*t2**2 + t2**3", "b4", "t back-solve")
    fr.claim("t2 from u", "u2*u1", "t2", "u back-solve")
    fr.claim("t4 from u", "u4*(u1 + u1*u2)", "t4", "u back-solve")
    return fr


def tau_s_b4_frame(char: int = 2) -> Frame:
    """tau on s1..s4, b4 and on p, q, r, s in the x coordinates."""
    require_char2(char, "the characteristic 2 n = 4 tables")
    fr = x_frame(4, char, name="n=4 (char 2)", homs={"tau": "(12)"})
    fr.define("b4", B4)
    for k, v in LEMMA42.items():
        fr.define(k, v)
    fr.define("p", P_DEF)
    fr.define("q", "u3")
    fr.define("r", "u4")
    fr.define("s", "u5")
    fr.define("t", T_DEF)
    fr.table("tau on s, b4", "tau", TAU_S_B4)
    fr.table("tau on p, q, r, s", "tau", TAU_PQRS,
             note="p = u1/u3 and the factor (r + 1)*QUAD + r; see the module constants")
    fr.claim("r**2 + r*s + s**2 + 1 in s", QUAD, "s1*s3/s2**2", "tau on p, q, r, s")
    fr.claim("t in x coordinates", "tau(t)", "t + 1", "tau on p, q, r, s")
    return fr


def pqrs_frame(char: int = 2) -> Frame:
    """Free p, q, r, s with tau from the verified table; t and A, B, C."""
    require_char2(char, "the characteristic 2 n = 4 tables")
    fr = Frame("pqrs (char 2)", ("p", "q", "r", "s"), char=char)
    fr.add_hom("tau", TAU_PQRS)
    fr.define("t", T_DEF)
    fr.define("A", "r + s + r*t")
    fr.define("B", "(r + s)/s")
    fr.define("C", "p*r/s")
    fr.table("tau on p, t, r, s", "tau", TAU_PTRS)
    for name, img in TAU_RABC.items():
        fr.claim(f"tau({name}) [r,A,B,C]", f"tau({name})", img, "tau on r, A, B, C")
    fr.claim("s from B", "r/(B + 1)", "s", "r, A, B, C back-solve")
    fr.claim("p from C", "C*s/r", "p", "r, A, B, C back-solve")
    fr.claim("t from A", "(A + r + s)/r", "t", "r, A, B, C back-solve")
    fr.claim("q from t", f"{QUAD}**3/(p**3*t*{LINEAR})", "q", "r, A, B, C back-solve")
    return fr
