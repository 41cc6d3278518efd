"""Acceptance criteria 1-9: one pass/fail line each, with pinned limits.

Run with ``pytest tests/test_acceptance.py`` (the lines appear in the
terminal summary) or ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import contextlib
import io
import random
import sys
import time

import pytest

from twisted_sn.cli import main as cli_main
from twisted_sn.suite.checks import mutation_self_test, run_check

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script from elsewhere
    ACCEPTANCE_LINES = {}

# pinned limits
SECONDS = {1: 5, 2: 60, 3: 1, 4: 600, 5: 600, 6: 300, 7: 60}
BOUND_LOG2 = -30
POINTS = 20
MUTATIONS = 10
SEED = 0


def _odd_prime(rng: random.Random) -> int:
    while True:
        p = rng.randrange(10_001, 100_000, 2)
        if all(p % d for d in range(3, int(p**0.5) + 1, 2)):
            return p


def _record(k: int, ok: bool, detail: str) -> None:
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[k] = line
    print(line)


def _timed(runs):
    start = time.perf_counter()
    reports = [run_check(*r[:2], **(r[2] if len(r) > 2 else {})) for r in runs]
    return reports, time.perf_counter() - start


def _problems(reports, need_symbolic=True):
    out = []
    for r in reports:
        if r.status != "pass":
            out.append(f"{r.id}/char {r.char} {r.status}: {r.witness}")
        elif need_symbolic and r.mode != "symbolic":
            out.append(f"{r.id}/char {r.char} ran in {r.mode} mode")
    return out


def _judge(k: int, reports, elapsed: float, problems, extra: str = "") -> None:
    limit = SECONDS.get(k)
    if limit is not None and elapsed >= limit:
        problems = problems + [f"{elapsed:.1f} s over the {limit} s limit"]
    ok = not problems
    detail = f"{len(reports)} reports, {elapsed:.2f} s" + (f", {extra}" if extra else "")
    if problems:
        detail += "; " + "; ".join(problems)
    _record(k, ok, detail)
    assert ok, detail


def test_criterion_1_masuda_identities():
    p = _odd_prime(random.Random(SEED))
    reports, dt = _timed([("C04", c, {"mode": "symbolic"}) for c in (0, 3, p)])
    _judge(1, reports, dt, _problems(reports), f"chars 0, 3, {p}")


def test_criterion_2_n3_n4_tables():
    runs = [(k, 0, {"mode": "symbolic"}) for k in ("C05", "C06", "C07", "C08")]
    runs += [(k, 2, {"mode": "symbolic"}) for k in ("C05", "C06", "C07", "C09")]
    reports, dt = _timed(runs)
    _judge(2, reports, dt, _problems(reports))


def test_criterion_3_coset_partitions():
    reports, dt = _timed([("C10", 0)])
    _judge(3, reports, dt, _problems(reports))


def test_criterion_4_maeda_invariance():
    reports, dt = _timed([("C11", 0), ("C11", 2)])
    problems = _problems(reports, need_symbolic=False)
    for r in reports:
        if r.mode == "specialize" and not (r.bound_log2 is not None and r.bound_log2 < BOUND_LOG2):
            problems.append(f"C11/char {r.char} bound 2^{r.bound_log2}")
    _judge(4, reports, dt, problems, "modes " + ", ".join(r.mode for r in reports))


def test_criterion_5_maeda_tau_tables():
    reports, dt = _timed([("C12", c, {"mode": "specialize", "points": POINTS}) for c in (0, 2)])
    problems = _problems(reports, need_symbolic=False)
    for r in reports:
        if r.bound_log2 is None or r.bound_log2 >= BOUND_LOG2:
            problems.append(f"C12/char {r.char} bound 2^{r.bound_log2}")
    bounds = ", ".join(f"2^{r.bound_log2:.1f}" for r in reports if r.bound_log2 is not None)
    _judge(5, reports, dt, problems, f"bounds {bounds}")


def test_criterion_6_conic_chain():
    runs = [(k, 0, {"mode": "symbolic"}) for k in ("C14", "C15", "C16", "C17", "C18")]
    runs.append(("C17", 3, {"mode": "symbolic"}))
    reports, dt = _timed(runs)
    _judge(6, reports, dt, _problems(reports))


def test_criterion_7_char2():
    reports, dt = _timed([(k, 2, {"mode": "symbolic"}) for k in ("C19", "C20", "C21", "C22")])
    _judge(7, reports, dt, _problems(reports))


def test_criterion_8_mutation_self_test():
    start = time.perf_counter()
    results = mutation_self_test(SEED, POINTS)
    dt = time.perf_counter() - start
    missed = [f"{r.check} {r.label}" for r in results if not r.detected]
    if len(results) != MUTATIONS:
        missed.append(f"{len(results)} targets, expected {MUTATIONS}")
    _judge(8, results, dt, missed, f"{len(results) - len(missed)}/{MUTATIONS} detected")


def _structured_run(argv) -> tuple[int, str]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(argv)
    return code, buf.getvalue()


def test_criterion_9_determinism():
    argv = ["--format", "structured", "--no-timing", "--seed", str(SEED)]
    start = time.perf_counter()
    first, second = _structured_run(argv), _structured_run(argv)
    dt = time.perf_counter() - start
    problems = []
    if first != second:
        problems.append("structured output differs between runs")
    if first[0] != 0:
        problems.append(f"exit status {first[0]}")
    lines = first[1].splitlines()
    _judge(9, lines, dt, problems, "default flags, compared without timing fields")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
