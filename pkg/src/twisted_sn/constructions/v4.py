"""n = 4: the Klein four-group invariants S, T, U and the reduction to K(S, T, U).

The chain is verified in stages.  Each stage's frame has the previous
stage's generators as free base variables and the hom given by the table
verified one stage earlier.  This is sound because each generator set is
algebraically independent: a hom on K(f, g, h), say, is determined by the
images of f, g, h, whatever ambient field they were computed in.
"""

from __future__ import annotations

from .frame import Frame, FrameError
from .symmetric import x_frame

STU_SIGMA = {"S": "T", "T": "U", "U": "S"}
STU_TAU = {
    "S": "(-S + T + U)/(a*T*U)",
    "T": "(S + T - U)/(a*S*T)",
    "U": "(S - T + U)/(a*S*U)",
}

X_IN_STU = {
    "x1": "(4 - s1*T + (-2*u1 + s1*T*(S + U))*x4 + S*U*(1 - s1*T)*x4**2 + u3*x4**3)/(S - T + U - S*U*x4)",
    "x2": "(4 - s1*U + (-2*u1 + s1*U*(T + S))*x4 + T*S*(1 - s1*U)*x4**2 + u3*x4**3)/(T - U + S - T*S*x4)",
    "x3": "(4 - s1*S + (-2*u1 + s1*S*(U + T))*x4 + U*T*(1 - s1*S)*x4**2 + u3*x4**3)/(U - S + T - U*T*x4)",
}
QUARTIC = ("u1**2 - 4*u2 + s1*u3 + (8 - s1*u1)*u3*x4 - (2*u1 - s1*u2)*u3*x4**2"
           " - s1*u3**2*x4**3 + u3**2*x4**4")


def _n_p(char: int) -> tuple[str, str, str]:
    """N, P and the image of N under tau, for the given characteristic branch."""
    if char == 2:
        return "s4/(s4 + a**2)", "N + (S + T + U)/(S + T + U + a*S*T*U)", "N + 1"
    return ("(s4 + a**2)/(s4 - a**2)",
            "N*(S + T + U + (S**2 + T**2 + U**2 - 2*(S*T + T*U + U*S))/(a*S*T*U))", "-N")


def build_v4_frame(char: int = 0) -> Frame:
    """x-frame for n = 4 with S, T, U, u1..u3 and the N, P constructions."""
    fr = x_frame(4, char, name="v4", homs={
        "sigma": "(123)", "tau": "(12)", "rho1": "(12)(34)", "rho2": "(13)(24)"})
    fr.define("S", "(x1 + x2 - x3 - x4)/(x1*x2 - x3*x4)")
    fr.define("T", "(x1 - x2 - x3 + x4)/(x1*x4 - x2*x3)")
    fr.define("U", "(x1 - x2 + x3 - x4)/(x1*x3 - x2*x4)")
    fr.define("u1", "S + T + U")
    fr.define("u2", "S*T + T*U + S*U")
    fr.define("u3", "S*T*U")
    n, p, tau_n = _n_p(char)
    fr.define("N", n)
    fr.define("P", p)
    for x, e in X_IN_STU.items():
        fr.claim(f"{x} in s1, S, T, U, x4", x, e, "x in s1, S, T, U, x4")
    fr.claim("quartic in x4", QUARTIC, "0", "quartic")
    fr.claim("s4 in S, T, U, s1", "s4", "(u1**2 - 4*u2 + u3*s1)/u3**2", "s4 formula")
    for rho in ("rho1", "rho2"):
        fr.table("V4 invariance", rho, {"S": "S", "T": "T", "U": "U", "s1": "s1", "s4": "s4"})
    fr.table("sigma on s4, S, T, U", "sigma", {"s1": "s1", "s4": "s4", **STU_SIGMA})
    fr.table("tau on s4, S, T, U", "tau", {"s4": "a**4/s4", **STU_TAU})
    fr.claim("sigma(N)", "sigma(N)", "N", "N and P")
    fr.claim("tau(N)", "tau(N)", tau_n, "N and P")
    fr.claim("sigma(P)", "sigma(P)", "P", "N and P")
    fr.claim("tau(P)", "tau(P)", "P", "N and P")
    return fr


def stu_frame(char: int = 0) -> Frame:
    """Free frame on S, T, U with sigma and tau from the verified table; f, g, h inside."""
    fr = Frame("STU", ("S", "T", "U"), char=char)
    fr.add_hom("sigma", STU_SIGMA, automorphism=True)
    fr.add_hom("tau", STU_TAU)
    fr.define("f", "S + T + U")
    fr.define("g", "(S*T**2 + T*U**2 + U*S**2 - 3*S*T*U)/(S**2 + T**2 + U**2 - S*T - T*U - U*S)")
    fr.define("h", "(S**2*T + T**2*U + U**2*S - 3*S*T*U)/(S**2 + T**2 + U**2 - S*T - T*U - U*S)")
    fr.define("X", "g**2 - g*h + h**2")
    fr.define("Y", "g**3 - f*g*h + h**3" if char != 2 else "g**3 + f*g*h + h**3")
    for v in ("S", "T", "U"):
        fr.claim(f"tau^2({v})", f"tau(tau({v}))", v, "S3 relations")
        fr.claim(f"sigma^3({v})", f"sigma(sigma(sigma({v})))", v, "S3 relations")
        fr.claim(f"(sigma tau)^2({v})", f"sigma(tau(sigma(tau({v}))))", v, "S3 relations")
    fr.table("sigma on f, g, h", "sigma", {"f": "f", "g": "g", "h": "h"})
    fr.table("tau on f, g, h", "tau", fgh_tau(char))
    return fr


def fgh_tau(char: int) -> dict:
    if char == 2:
        return {"f": "f**2/(a*Y)", "g": "f*h/(a*Y)", "h": "f*g/(a*Y)"}
    return {
        "f": "(f**2 - 4*f*(g + h) + 12*X)/(a*Y)",
        "g": "(-f**2*h*(f - 4*h) + 2*f*(f - 2*g - 8*h)*X + 24*X**2 - 8*g*Y)/(a*(f**2 - 2*f*(g + h) + 4*X)*Y)",
        "h": "(-f**2*(f*g + 4*h**2) + 6*f*(f - 2*g)*X + 24*X**2 - 4*(f + 2*h)*Y)/(a*(f**2 - 2*f*(g + h) + 4*X)*Y)",
    }


def _fgh_images(char: int) -> dict:
    """The f, g, h table with X and Y written out, as images of base variables."""
    X = "(g**2 - g*h + h**2)"
    Y = "(g**3 + f*g*h + h**3)" if char == 2 else "(g**3 - f*g*h + h**3)"
    return {k: v.replace("X", X).replace("Y", Y) for k, v in fgh_tau(char).items()}


FGH_TAU = {
    "F": "4*(27*G**4 - 7*F*G**2*H + 5*G**2*H**2 - F*H**3)/(a*(4*F*G**2 - F**2*H + G**2*H)*(3*G**2 + H**2))",
    "G": "4*G*(F*G**2 + 7*G**2*H - F*H**2 + H**3)/(a*(4*F*G**2 - F**2*H + G**2*H)*(3*G**2 + H**2))",
    "H": "4*H*(F*G**2 + 7*G**2*H - F*H**2 + H**3)/(a*(4*F*G**2 - F**2*H + G**2*H)*(3*G**2 + H**2))",
}
ABC_TAU = {
    "A": "(-A + 5*C - 7*A*C**2 + 27*C**3)/(1 - A*C + 7*C**2 + A*C**3)",
    "B": "4*(1 - A*C + 7*C**2 + A*C**3)/(a*B*(1 - A**2 + 4*A*C)*(1 + 3*C**2))",
    "C": "C",
}
CDE_TAU = {
    "C": "C",
    "D": "(1 + 3*C**2)**3/D",
    "E": "-a*(1 + 3*C**2)*(D + (1 + 3*C**2)**3/D - 2*(1 + 5*C**2 + 2*C**4))/E",
}
CHAR2_ABC_TAU = {
    "A": "A",
    "B": "1/B",
    "C": "a/A*(B + 1/B + A + 1)/C",
}


def build_n4_reduction(char: int = 0) -> list[Frame]:
    """The chain of free frames after the f, g, h stage, for the given branch."""
    fgh = Frame("fgh", ("f", "g", "h"), char=char)
    fgh.add_hom("tau", _fgh_images(char))
    if char == 2:
        fgh.define("A", "f/(g + h)")
        fgh.define("B", "g/h")
        fgh.define("C", "1/h")
        fgh.table("tau on A, B, C (char 2)", "tau", CHAR2_ABC_TAU)
        return [fgh]
    fgh.define("F", "g + h")
    fgh.define("G", "g - h")
    fgh.define("H", "f - (g + h)")
    fgh.table("tau on F, G, H", "tau", FGH_TAU)
    fgh.claim("tau(G/H)", "tau(G/H)", "G/H", "tau on F, G, H")

    FGH = Frame("FGH", ("F", "G", "H"), char=char)
    FGH.add_hom("tau", FGH_TAU)
    FGH.define("A", "F/G")
    FGH.define("B", "G")
    FGH.define("C", "G/H")
    FGH.table("tau on A, B, C", "tau", ABC_TAU)

    ABC = Frame("ABC", ("A", "B", "C"), char=char)
    ABC.add_hom("tau", ABC_TAU)
    ABC.define("D", "1 - A*C + 7*C**2 + A*C**3")
    ABC.define("E", "2*C*(C**2 - 1)/B")
    ABC.table("tau on C, D, E", "tau", CDE_TAU)
    return [fgh, FGH, ABC]


def require_odd(char: int, what: str) -> None:
    if char == 2:
        raise FrameError(f"{what} is only defined in characteristic different from 2")
