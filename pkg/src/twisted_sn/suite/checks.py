"""The check catalog C01..C22, the runner and the mutation self-test.

Each check builds one or more frames and verifies selected claim tables,
or runs an exact side computation (action law, coset partitions,
semi-invariance, singular points, linearity).  Reports are plain
dataclasses that serialize to one JSON object per check.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import time
from dataclasses import asdict, dataclass, field as dc_field
from typing import Callable

from ..algebra.hom import compose_homs, hom_equal
from ..constructions import char2, conic, maeda, small_n, v4
from ..constructions.frame import Frame, FrameError
from ..groups import (H1_GENS, H3_GENS, H_GENS, H2_GENS, R1, R2, R3, Perm, perm_sign, perms,
                      symmetric_group, twisted_hom, twisted_ring, verify_coset_partition)
from .engine import Outcome, apply_mutation, combine, select, verify

MODES = ("auto", "symbolic", "specialize")
DEFAULT_POINTS = 20
ACTION_LAW_RANDOM_PAIRS = 50
SMALL_CHAR_LIMIT = 1 << 16


class CheckError(ValueError):
    """Unknown check id, incompatible characteristic or refused mode."""


class HeavyRefused(CheckError):
    pass


@dataclass(frozen=True)
class CheckId:
    id: str
    location: str
    chars: str  # any | odd | two
    default_mode: str = "symbolic"
    heavy: bool = False

    def admits(self, char: int) -> bool:
        if self.chars == "odd":
            return char != 2
        if self.chars == "two":
            return char == 2
        return True


@dataclass
class CheckReport:
    id: str
    location: str
    char: int
    mode: str
    status: str
    elapsed_ms: float
    claims: int = 0
    witness: str | None = None
    field: str | None = None
    bound_log2: float | None = None
    notes: list = dc_field(default_factory=list)

    def to_dict(self, timing: bool = True) -> dict:
        d = asdict(self)
        b = d["bound_log2"]
        if b is not None and math.isinf(b):
            d["bound_log2"] = None
        if not timing:
            d.pop("elapsed_ms")
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, ensure_ascii=False)


@dataclass
class RunContext:
    char: int
    mode: str  # symbolic | specialize, already resolved
    rng: random.Random
    points: int


# -- helpers -------------------------------------------------------------------------------


def frame_part(ctx: RunContext, frame: Frame, tables=None, mode: str | None = None) -> Outcome:
    claims = select(frame, tables=tables)
    if not claims:
        raise FrameError(f"no claims selected from frame {frame.name} (tables {tables})")
    return verify(frame, claims, mode or ctx.mode, ctx.rng, ctx.points)


def exact_part(results) -> Outcome:
    """Combine (ok, detail) pairs from exact side computations."""
    results = list(results)
    for ok, detail in results:
        if not ok:
            return Outcome("fail", "symbolic", len(results), detail)
    return Outcome("pass", "symbolic", len(results))


def _frames(ctx: RunContext, builders, tables=None) -> list[Outcome]:
    return [frame_part(ctx, b(), tables) for b in builders]


# -- the checks ----------------------------------------------------------------------------


def action_law(ctx: RunContext) -> list[Outcome]:
    """twisted_hom(s) o twisted_hom(p) == twisted_hom(s*p) and sign is multiplicative."""
    results = []
    for n in range(2, 6):
        ring = twisted_ring(n, ctx.char)
        group = symmetric_group(n)
        if n <= 4:
            pairs = list(itertools.product(group, repeat=2))
        else:
            pairs = [(ctx.rng.choice(group), ctx.rng.choice(group)) for _ in range(ACTION_LAW_RANDOM_PAIRS)]
        homs = {}

        def hom(p: Perm):
            if p not in homs:
                homs[p] = twisted_hom(p, ring)
            return homs[p]

        for s, p in pairs:
            ok = hom_equal(compose_homs(hom(s), hom(p)), hom(s * p))
            results.append((ok, None if ok else f"n={n}: twisted({s}) o twisted({p}) != twisted({s * p})"))
            if n <= 4:
                ok = perm_sign(s * p) == perm_sign(s) * perm_sign(p)
                results.append((ok, None if ok else f"sign({s}*{p}) is not sign({s})*sign({p})"))
    return [exact_part(results)]


def coset_partitions(ctx: RunContext) -> list[Outcome]:
    cases = [
        ("R1 in S5", H1_GENS, "S_n", R1),
        ("R2 in H = <(23),(24),(25)>", H2_GENS, perms(H_GENS), R2),
        ("R3 in A5", H3_GENS, "A_n", R3),
    ]
    results = []
    for label, gens, ambient, reps in cases:
        res = verify_coset_partition(5, perms(gens), ambient, perms(reps), product="left")
        ok = res.ok and res.subgroup_order * len(reps) == res.ambient_order
        results.append((ok, None if ok else f"{label}: {res.witness or 'orders do not match'}"))
    return [exact_part(results)]


def maeda_invariance(ctx: RunContext) -> list[Outcome]:
    if ctx.mode == "specialize":
        return [frame_part(ctx, maeda.maeda_frame(ctx.char), ["A5 invariance"])]
    quotients = maeda.maeda_symbolic(ctx.char)
    results = []
    for mu in perms(["(123)", "(12345)"]):
        for i, q in enumerate(quotients, 1):
            ok, detail = maeda.semi_invariance(q, mu)
            results.append((ok, None if ok else f"F{i}: {detail}"))
    out = exact_part(results)
    out.notes.append("each numerator and denominator factor is mapped to a constant multiple of itself")
    return [out]


def maeda_tau(ctx: RunContext) -> list[Outcome]:
    return [frame_part(ctx, maeda.maeda_frame(ctx.char), ["tau on F1..F5"])]


def v4_lemma(ctx: RunContext) -> list[Outcome]:
    return [frame_part(ctx, v4.build_v4_frame(ctx.char),
                       ["x in s1, S, T, U, x4", "quartic", "s4 formula", "V4 invariance"])]


def v4_actions(ctx: RunContext) -> list[Outcome]:
    return [frame_part(ctx, v4.build_v4_frame(ctx.char),
                       ["sigma on s4, S, T, U", "tau on s4, S, T, U", "N and P"])]


def n4_reduction(ctx: RunContext) -> list[Outcome]:
    out = [frame_part(ctx, v4.stu_frame(ctx.char))]
    out += [frame_part(ctx, fr) for fr in v4.build_n4_reduction(ctx.char)]
    return out


def rho_action(ctx: RunContext) -> list[Outcome]:
    c = ctx.char
    out = _frames(ctx, [lambda n=n: conic.z_coordinate_frame(n, c) for n in (3, 4, 5)])
    out += _frames(ctx, [lambda n=n: conic.discriminant_frame(n, c) for n in (3, 4)])
    # over small prime fields only the subresultant gcd is available, which
    # is impractical for the t-from-z frames; they are specialized there
    small = 0 < c < SMALL_CHAR_LIMIT
    for n in (3, 4):
        out.append(frame_part(ctx, conic.t_from_z_frame(n, c), mode="specialize" if small else None))
    fr5 = conic.t_from_z_frame(5, c)
    light = sorted({cl.table for cl in fr5.claims} - {"rho on u (n=5)"})
    out.append(frame_part(ctx, fr5, light, mode="specialize" if small else None))
    if ctx.mode == "symbolic":
        part = exact_part([conic.rho_u_factored(n, c) for n in (3, 4, 5)])
        part.notes.append("rho(u)*u = f for n = 3, 4, 5 decided on factorizations")
        out.append(part)
    else:
        out.append(frame_part(ctx, fr5, ["rho on u (n=5)"], mode="specialize"))
    if small:
        out[-1].notes.append(f"t from z frames specialized in characteristic {c}")
    return out


def recovery(ctx: RunContext) -> list[Outcome]:
    return _frames(ctx, [lambda n=n: conic.lemma32_frame(n, ctx.char) for n in (3, 4, 5)])


def conic_relation(ctx: RunContext) -> list[Outcome]:
    return _frames(ctx, [lambda n=n: conic.conic_frame(n, ctx.char) for n in (3, 4)])


def n3_chain(ctx: RunContext) -> list[Outcome]:
    out = [frame_part(ctx, conic.n3_chain_frame(ctx.char))]
    if ctx.char == 3:
        out[0].notes.append("characteristic 3: only the degenerate conic is checked")
        return out
    cases = [c for c in conic.SINGULAR_CASES if c.lhs in {row[1] for row in conic.N3_CHAIN}]
    results = [conic.check_singular_case(c, ctx.rng) for c in cases]
    results.append(conic.smooth_point_case(ctx.rng))
    results += [conic.check_linear(lhs, rhs, var) for _, lhs, rhs, var, _ in conic.LINEAR_IN[:2]]
    part = exact_part(results)
    part.notes.append("singular points and linearity are computed over Q or F_p with a = c**2")
    out.append(part)
    return out


def n4_chain(ctx: RunContext) -> list[Outcome]:
    small = 0 < ctx.char < SMALL_CHAR_LIMIT
    out = [frame_part(ctx, conic.n4_chain_frame(ctx.char), mode="specialize" if small else None)]
    if small:
        out[0].notes.append(f"chain frame specialized in characteristic {ctx.char}")
    cases = [c for c in conic.SINGULAR_CASES if c.lhs in {row[1] for row in conic.N4_CHAIN}]
    results = [conic.check_singular_case(c, ctx.rng) for c in cases]
    results += [conic.check_linear(lhs, rhs, var) for _, lhs, rhs, var, _ in conic.LINEAR_IN[2:]]
    part = exact_part(results)
    part.notes.append("singular points and linearity are computed over Q or F_p with a = c**2")
    out.append(part)
    return out


def reduction(ctx: RunContext) -> list[Outcome]:
    out = [frame_part(ctx, char2.reduction_frame(ctx.char))]
    out.append(exact_part([conic.check_linear(char2.REL_U, "0", "u2")]))
    return out


def _simple(*builders) -> Callable:
    def run(ctx: RunContext) -> list[Outcome]:
        return [frame_part(ctx, b(ctx.char)) for b in builders]
    return run


CATALOG: dict[str, tuple[CheckId, Callable]] = {}


def _register(cid: CheckId, fn: Callable) -> None:
    CATALOG[cid.id] = (cid, fn)


_register(CheckId("C01", "twisted action law, all n <= 5", "any"), action_law)
_register(CheckId("C02", "n = 2 fixed-field generators", "any"), _simple(small_n.n2_frame))
_register(CheckId("C03", "involution x -> a/x, y -> b/y: invariants s, t and back-solve", "any"),
          _simple(small_n.involution_frame))
_register(CheckId("C04", "Masuda identities for s2, s3, b, b'", "any"), _simple(small_n.masuda_frame))
_register(CheckId("C05", "n = 3 tau table on s, b, u, v and the w-form", "any"), _simple(small_n.n3_frame))
_register(CheckId("C06", "V4 generators: x1, x2, x3 in S, T, U, x4, quartic, s4 formula", "any"), v4_lemma)
_register(CheckId("C07", "sigma and tau on s4, S, T, U; N and P", "any"), v4_actions)
_register(CheckId("C08", "n = 4 reduction chain f, g, h -> F, G, H -> A, B, C -> C, D, E", "odd"),
          n4_reduction)
_register(CheckId("C09", "n = 4 reduction chain f, g, h -> A, B, C in characteristic 2", "two"),
          n4_reduction)
_register(CheckId("C10", "coset partitions R1, R2, R3", "any"), coset_partitions)
_register(CheckId("C11", "Maeda basis F1..F5 fixed by (123) and (12345)", "any"), maeda_invariance)
_register(CheckId("C12", "tau table on F1..F5", "any", default_mode="specialize", heavy=True), maeda_tau)
_register(CheckId("C13", "G1..G5 change of variables and its tau table", "any"), _simple(maeda.build_g_basis))
_register(CheckId("C14", "rho action on z, t, u and the discriminant", "odd"), rho_action)
_register(CheckId("C15", "u_i recovery identities, n = 3, 4, 5", "odd"), recovery)
_register(CheckId("C16", "conic relation x**2 - a*y**2 = h, n = 3, 4", "odd"), conic_relation)
_register(CheckId("C17", "n = 3 desingularization chain, singular points, characteristic 3", "odd"), n3_chain)
_register(CheckId("C18", "n = 4 desingularization chain, singular loci, final linearity", "odd"), n4_chain)
_register(CheckId("C19", "b3, b4 quadratic relations and u, v through b3", "two"),
          _simple(char2.revoy_n3_frame, char2.revoy_n4_frame))
_register(CheckId("C20", "n = 3 tau table in characteristic 2", "two"), _simple(char2.char2_n3_frame))
_register(CheckId("C21", "t and u reductions, u1, u3, u4, u5 in s and b4", "two"), reduction)
_register(CheckId("C22", "n = 4 tau tables on p, q, r, s, t and A, B, C in characteristic 2", "two"),
          _simple(char2.tau_s_b4_frame, char2.pqrs_frame))

ALIASES = {
    "ACTION_LAW": "C01",
    "MASUDA_IDENTITIES": "C04",
    "N3_TAU_TABLE": "C05",
    "COSET_PARTITIONS": "C10",
    "N5_TAU_TABLE": "C12",
}


def check_ids() -> list[str]:
    return sorted(CATALOG)


def resolve_id(name: str) -> str:
    key = ALIASES.get(name, name)
    if key not in CATALOG:
        raise CheckError(f"unknown check id {name!r}")
    return key


def check_info(name: str) -> CheckId:
    return CATALOG[resolve_id(name)][0]


def resolve_mode(cid: CheckId, mode: str, allow_heavy: bool) -> str:
    if mode not in MODES:
        raise CheckError(f"unknown mode {mode!r}")
    if mode == "auto":
        return "specialize" if cid.heavy else cid.default_mode
    if mode == "symbolic" and cid.heavy and not allow_heavy:
        raise HeavyRefused(f"{cid.id} in symbolic mode is long-running; pass --allow-heavy to run it")
    return mode


def run_check(check: str, char: int = 0, mode: str = "auto", seed: int = 0,
              points: int = DEFAULT_POINTS, allow_heavy: bool = False) -> CheckReport:
    key = resolve_id(check)
    cid, fn = CATALOG[key]
    if not cid.admits(char):
        raise CheckError(f"{key} is not defined in characteristic {char}")
    used = resolve_mode(cid, mode, allow_heavy)
    ctx = RunContext(char, used, random.Random(f"{seed}:{key}:{char}"), points)
    start = time.perf_counter()
    out = combine(fn(ctx))
    elapsed = round((time.perf_counter() - start) * 1000, 1)
    if out.status == "fail" and not out.witness:
        out.witness = "failure without a recorded witness"
    return CheckReport(key, cid.location, char, out.mode, out.status, elapsed, out.claims,
                       out.witness, out.field, out.bound_log2, list(out.notes))


def skipped_report(key: str, char: int) -> CheckReport:
    cid = CATALOG[key][0]
    return CheckReport(key, cid.location, char, "none", "skipped", 0.0,
                       notes=[f"not defined in characteristic {char}"])


def run_all(char_set=(0, 2, 3), mode: str = "auto", seed: int = 0, points: int = DEFAULT_POINTS,
            checks=None, allow_heavy: bool = False, include_skipped: bool = True,
            progress: Callable | None = None) -> list[CheckReport]:
    """Every selected check in every admissible characteristic, ordered by (id, char)."""
    keys = [resolve_id(c) for c in checks] if checks else check_ids()
    reports = []
    for key in sorted(set(keys)):
        cid = CATALOG[key][0]
        for char in char_set:
            if cid.admits(char):
                rep = run_check(key, char, mode, seed, points, allow_heavy)
            elif include_skipped:
                rep = skipped_report(key, char)
            else:
                continue
            reports.append(rep)
            if progress:
                progress(rep)
    return reports


def exit_status(reports) -> int:
    return 1 if any(r.status in ("fail", "inconclusive") for r in reports) else 0


# -- mutation self-test --------------------------------------------------------------------


@dataclass(frozen=True)
class MutationTarget:
    check: str
    char: int
    build: Callable
    label: str
    mode: str = "symbolic"
    side: str = "rhs"
    which: int | None = None  # literal index in source order; None picks a coefficient


MUTATION_TARGETS = [
    MutationTarget("C04", 0, lambda: small_n.masuda_frame(0), "s2 in s1, u, v"),
    MutationTarget("C05", 0, lambda: small_n.n3_frame(0), "tau(v) [s3,v,w]"),
    MutationTarget("C06", 0, lambda: v4.build_v4_frame(0), "quartic in x4", side="lhs"),
    MutationTarget("C08", 0, lambda: v4.build_n4_reduction(0)[1], "tau(A)"),
    MutationTarget("C09", 2, lambda: v4.build_n4_reduction(2)[0], "tau(C)", which=1),
    MutationTarget("C12", 2, lambda: maeda.maeda_frame(2), "tau(F4)", "specialize"),
    MutationTarget("C14", 0, lambda: conic.discriminant_frame(3, 0), "Delta**2 in t"),
    MutationTarget("C16", 0, lambda: conic.conic_frame(3, 0), "h in v (form 1)"),
    MutationTarget("C17", 0, lambda: conic.n3_chain_frame(0), conic.N3_CHAIN[1][0]),
    MutationTarget("C22", 2, lambda: char2.pqrs_frame(2), "tau(C) [r,A,B,C]", which=2),
]


@dataclass
class MutationResult:
    check: str
    label: str
    original: str
    mutated: str
    status: str

    @property
    def detected(self) -> bool:
        return self.status == "fail"


def mutation_self_test(seed: int = 0, points: int = DEFAULT_POINTS, targets=None) -> list[MutationResult]:
    """Shift one integer literal in each target claim; its table must then fail."""
    out = []
    for t in targets or MUTATION_TARGETS:
        fr = t.build()
        original = next(c for c in fr.claims if c.label == t.label)
        mutated = apply_mutation(fr, t.label, t.side, t.which)
        rng = random.Random(f"{seed}:mutation:{t.check}:{t.label}")
        res = verify(fr, select(fr, tables=[mutated.table]), t.mode, rng, points)
        side = (original.lhs, mutated.lhs) if t.side == "lhs" else (original.rhs, mutated.rhs)
        out.append(MutationResult(t.check, t.label, side[0], side[1], res.status))
    return out


# -- rendering -----------------------------------------------------------------------------


def format_text(reports) -> str:
    lines = []
    for r in reports:
        bound = "" if r.bound_log2 is None or math.isinf(r.bound_log2) else f"  bound 2^{r.bound_log2}"
        lines.append(f"{r.id}  char {r.char:<5} {r.mode:<10} {r.status:<12} {r.elapsed_ms:>10.1f} ms"
                     f"  {r.claims:>4} claims{bound}  {r.location}")
        if r.witness:
            lines.append(f"      witness: {r.witness}")
    n_fail = sum(r.status == "fail" for r in reports)
    n_pass = sum(r.status == "pass" for r in reports)
    n_skip = sum(r.status == "skipped" for r in reports)
    lines.append(f"{n_pass} passed, {n_fail} failed, {n_skip} skipped, "
                 f"{len(reports) - n_pass - n_fail - n_skip} inconclusive")
    return "\n".join(lines)


def format_structured(reports, timing: bool = True) -> str:
    return "\n".join(r.to_json(timing) for r in reports)
