"""Frames for the twisted action with n = 2 and n = 3, and the two-variable involution.

The n = 3 action tables are stated on s1, s2, s3, on the two cyclic cubic
sums b, bp, on Masuda's u, v and on w = u/v.
"""

from __future__ import annotations

from .symmetric import add_masuda, x_frame
from .frame import Frame


def n2_frame(char: int = 0) -> Frame:
    fr = x_frame(2, char, name="n2", homs={"tau": "(12)"})
    fr.define("e1", "x1 + a/x2")
    fr.define("e2", "a*x1/x2")
    fr.claim("tau fixes x1 + a/x2", "tau(e1)", "e1", "n2 generators")
    fr.claim("tau fixes a*x1/x2", "tau(e2)", "e2", "n2 generators")
    return fr


def involution_frame(char: int = 0) -> Frame:
    """sigma: x -> a/x, y -> b/y with b = c*(x + a/x) + d, and its invariants s, t.

    The back-solve claims express x + a/x, y + b/y and y - b/y through s and
    t, so x and y are roots of quadratics over K(s, t).
    """
    fr = Frame("involution", ("x", "y", "c", "d"), char=char)
    fr.define("b", "c*(x + a/x) + d")
    fr.add_hom("sigma", {"x": "a/x", "y": "(c*(x + a/x) + d)/y"})
    fr.define("den", "x*y - a*b/(x*y)")
    fr.define("s", "(x - a/x)/den")
    fr.define("t", "(y - b/y)/den")
    fr.claim("sigma(b)", "sigma(b)", "b", "involution")
    fr.claim("sigma(s)", "sigma(s)", "s", "involution")
    fr.claim("sigma(t)", "sigma(t)", "t", "involution")
    fr.claim("sigma^2(x)", "sigma(sigma(x))", "x", "involution")
    fr.claim("sigma^2(y)", "sigma(sigma(y))", "y", "involution")
    fr.claim("x + a/x from s, t", "x + a/x", "(1 - d*s**2 + a*t**2)/(t + c*s**2)", "back-solve")
    fr.claim("y + b/y from s, t", "y + b/y", "(2 - (x + a/x)*t)/s", "back-solve")
    fr.claim("y - b/y from s, t", "y - b/y", "(x - a/x)*t/s", "back-solve")
    return fr


MASUDA_IDENTITIES = {
    "s2": "s1*(u + v) - 3*(u**2 - u*v + v**2)",
    "s3": "s1*u*v - (u**3 + v**3)",
    "b": "s1**2*u - 3*s1*u**2 + 3*(2*u - v)*(u**2 - u*v + v**2)",
    "bp": "s1**2*v - 3*s1*v**2 - 3*(u - 2*v)*(u**2 - u*v + v**2)",
}


def masuda_frame(char: int = 0) -> Frame:
    fr = add_masuda(x_frame(3, char, name="masuda", with_a=False, homs={"sigma": "(123)"}))
    for name, rhs in MASUDA_IDENTITIES.items():
        fr.claim(f"{name} in s1, u, v", name, rhs, "masuda identities")
    fr.claim("sigma(u)", "sigma(u)", "u", "cyclic invariance")
    fr.claim("sigma(v)", "sigma(v)", "v", "cyclic invariance")
    return fr


N3_TAU_SYMMETRIC = {
    "s1": "a*s2/s3",
    "s2": "a**2*s1/s3",
    "s3": "a**3/s3",
    "b": "a**3*b/s3**2",
    "bp": "a**3*bp/s3**2",
}

N3_TAU_UV = {
    "s3": "a**3/s3",
    "u": "a*u/(u**2 - u*v + v**2)",
    "v": "a*v/(u**2 - u*v + v**2)",
}

N3_TAU_W = {
    "s3": "a**3/s3",
    "v": "a/(v*(1 - w + w**2))",
    "w": "w",
}


def n3_frame(char: int = 0) -> Frame:
    """n = 3 with sigma = (123) and tau = (12) acting by the twisted action."""
    fr = add_masuda(x_frame(3, char, name="n3", homs={"sigma": "(123)", "tau": "(12)"}))
    fr.define("w", "u/v")
    fr.table("tau on x", "tau", {"x1": "a/x2", "x2": "a/x1", "x3": "a/x3"},
             note="the printed proof repeats tau(x3); tau(x2) = a/x1 follows from the twisted action")
    fr.table("tau on s, b", "tau", N3_TAU_SYMMETRIC)
    for name, img in N3_TAU_UV.items():
        fr.claim(f"tau({name}) [s3,u,v]", f"tau({name})", img, "tau on s3, u, v")
    for name, img in N3_TAU_W.items():
        fr.claim(f"tau({name}) [s3,v,w]", f"tau({name})", img, "tau on s3, v, w")
    fr.table("sigma on u, v", "sigma", {"u": "u", "v": "v", "s3": "s3"})
    return fr
