"""Verification of frame claims, exactly or by specialization at random points."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field

from ..algebra.finite import specialization_field
from ..algebra.parse import mutate_literal
from ..algebra.ratfunc import RatFunc
from ..algebra.specialize import BadPoint
from ..constructions.frame import Claim, Frame, NumericContext, claim_degree

MAX_RESAMPLES = 64
WITNESS_CHARS = 400


@dataclass
class Outcome:
    """Result of verifying one group of claims."""

    status: str  # pass | fail | inconclusive
    mode: str
    claims: int = 0
    witness: str | None = None
    bound_log2: float | None = None
    field: str | None = None
    notes: list = dc_field(default_factory=list)


def _short(x) -> str:
    s = str(x)
    return s if len(s) <= WITNESS_CHARS else s[:WITNESS_CHARS] + f"... ({len(s)} chars)"


def apply_mutation(frame: Frame, label: str, side: str = "rhs", which: int | None = None) -> Claim:
    """Replace claim ``label`` by a copy with one integer literal of one side shifted."""
    for i, c in enumerate(frame.claims):
        if c.label == label:
            if side == "lhs":
                lhs, rhs = mutate_literal(c.lhs, which), c.rhs
            else:
                lhs, rhs = c.lhs, mutate_literal(c.rhs, which)
            new = Claim(c.label, lhs, rhs, c.table, "mutated")
            frame.claims[i] = new
            return new
    raise KeyError(f"no claim {label!r} in frame {frame.name}")


def select(frame: Frame, tables=None, labels=None) -> list[Claim]:
    out = []
    for c in frame.claims:
        if tables is not None and c.table not in tables:
            continue
        if labels is not None and c.label not in labels:
            continue
        out.append(c)
    return out


def verify_symbolic(frame: Frame, claims: list[Claim]) -> Outcome:
    ctx = frame.symbolic()
    for c in claims:
        try:
            lhs = ctx.value(c.lhs)
            rhs = ctx.value(c.rhs)
        except ZeroDivisionError as exc:
            return Outcome("fail", "symbolic", len(claims),
                           f"[{frame.name}] {c.label}: {type(exc).__name__}: {exc}")
        if not _equal(lhs, rhs):
            resid = (lhs - rhs).normalized()
            return Outcome("fail", "symbolic", len(claims),
                           f"[{frame.name}] {c.label}: {c.lhs} != {c.rhs}; difference = {_short(resid)}")
    return Outcome("pass", "symbolic", len(claims))


def _equal(x: RatFunc, y: RatFunc) -> bool:
    if x.reduced and y.reduced:
        return x == y
    return x.equals(y)


def sample_values(frame: Frame, F, rng: random.Random) -> dict:
    from ..algebra.specialize import FVal

    vals = {}
    for name in frame.sample_names:
        v = F.random(rng)
        # a = 0 makes every twisted image singular; draw the parameter nonzero
        while name in ("a", frame.alpha) and v == F.zero:
            v = F.random(rng)
        vals[name] = FVal(F, v)
    return vals


def verify_specialize(frame: Frame, claims: list[Claim], rng: random.Random, points: int) -> Outcome:
    F = specialization_field(frame.char)
    degs = [claim_degree(frame, c.lhs, c.rhs) for c in claims]
    good = 0
    bad_streak = 0
    total_bad = 0
    while good < points:
        ctx = NumericContext(frame, F, sample_values(frame, F, rng))
        try:
            for c in claims:
                lhs = ctx.value(c.lhs)
                rhs = ctx.value(c.rhs)
                if lhs != rhs:
                    pt = {k: str(v.v) for k, v in ctx.values.items()}
                    return Outcome("fail", "specialize", len(claims),
                                   f"[{frame.name}] {c.label}: {c.lhs} != {c.rhs} at {pt} over {F.describe()}",
                                   field=F.describe())
        except BadPoint:
            bad_streak += 1
            total_bad += 1
            if bad_streak > MAX_RESAMPLES:
                return Outcome("inconclusive", "specialize", len(claims),
                               f"[{frame.name}] {MAX_RESAMPLES} consecutive points hit a pole",
                               field=F.describe())
            continue
        bad_streak = 0
        good += 1
    out = Outcome("pass", "specialize", len(claims), bound_log2=sz_bound_log2(degs, F.order, points),
                  field=F.describe())
    out.notes.append(f"{points} points over {F.describe()}, max claim degree {max(degs, default=0)}, "
                     f"{total_bad} resampled")
    return out


def sz_bound_log2(degs, q: int, points: int) -> float:
    """log2 of sum over claims of (deg/q)**points, the Schwartz-Zippel failure bound."""
    terms = [points * (math.log2(d) - math.log2(q)) for d in degs if d > 0]
    if not terms:
        return float("-inf")
    m = max(terms)
    return round(m + math.log2(sum(2.0 ** (t - m) for t in terms)), 2)


def log2_sum(values) -> float | None:
    vals = [v for v in values if v is not None]
    if not vals:
        return None
    m = max(vals)
    if m == float("-inf"):
        return m
    return round(m + math.log2(sum(2.0 ** (v - m) for v in vals)), 2)


def verify(frame: Frame, claims: list[Claim], mode: str, rng: random.Random, points: int) -> Outcome:
    if mode == "specialize":
        return verify_specialize(frame, claims, rng, points)
    return verify_symbolic(frame, claims)


def combine(outcomes: list[Outcome]) -> Outcome:
    """First failure wins, then inconclusive; bounds add up."""
    if not outcomes:
        return Outcome("pass", "symbolic")
    modes = sorted({o.mode for o in outcomes})
    mode = modes[0] if len(modes) == 1 else "mixed"
    claims = sum(o.claims for o in outcomes)
    notes = [n for o in outcomes for n in o.notes]
    bound = log2_sum(o.bound_log2 for o in outcomes)
    fields = sorted({o.field for o in outcomes if o.field})
    field = ", ".join(fields) if fields else None
    for status in ("fail", "inconclusive"):
        for o in outcomes:
            if o.status == status:
                return Outcome(status, mode, claims, o.witness, bound, field, notes)
    return Outcome("pass", mode, claims, None, bound, field, notes)
