"""Frames for the constructed generators, with short entry points by name."""

from __future__ import annotations

import random

from . import char2, conic, maeda
from .frame import Frame, FrameError


def maeda_basis(char: int = 0) -> Frame:
    """F1..F5 for n = 5 with the A5-invariance claims and the tau table."""
    return maeda.maeda_frame(char)


def build_conic_frame(n: int, char: int = 0) -> Frame:
    """z, t, u, v, h and the conic coordinates x, y for n = 3 or 4."""
    if n not in (3, 4):
        raise FrameError(f"conic frame is defined for n = 3, 4, not {n}")
    return conic.conic_frame(n, char)


def conic_relation_check(n: int, char: int = 0) -> bool:
    """Whether x**2 - a*y**2 = h (or X, Y, H for n = 4) holds identically."""
    from ..suite.engine import select, verify

    fr = build_conic_frame(n, char)
    return verify(fr, select(fr), "symbolic", random.Random(0), 20).status == "pass"


def blowup_chain(n: int, variant: str = "main") -> list[tuple[str, str, str]]:
    """(label, lhs, rhs) for each relation of the chain, in substitution order.

    For n = 3 the main variant ends at S1 + 4*a*S2**2 and the alternate one
    at 1 + 4*T6 + 4*a*T4**2*T6**2; n = 4 has a single chain ending linear in p5.
    """
    if n == 3:
        rows = conic.N3_CHAIN
        split = next(i for i, r in enumerate(rows) if r[0] == "final in S1, S2") + 1
        if variant == "main":
            rows = rows[:split]
        elif variant == "alternate":
            rows = rows[:3] + rows[split:]
        else:
            raise ValueError(f"unknown variant {variant!r}")
    elif n == 4:
        if variant != "main":
            raise ValueError(f"n = 4 has only the main chain, not {variant!r}")
        rows = conic.N4_CHAIN
    else:
        raise ValueError(f"chains exist for n = 3, 4, not {n}")
    return [(label, lhs, rhs) for label, lhs, rhs, _ in rows]


def char2_invariant_frame(n: int, char: int = 2) -> Frame:
    """b3 or b4 with its quadratic relation over the symmetric functions."""
    if n == 3:
        return char2.revoy_n3_frame(char)
    if n == 4:
        return char2.revoy_n4_frame(char)
    raise FrameError(f"characteristic 2 frame is defined for n = 3, 4, not {n}")
