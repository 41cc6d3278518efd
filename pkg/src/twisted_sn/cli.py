"""Command-line front end for the check suite.

Exit status: 0 when every report passes, 1 when any fails or is
inconclusive, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys

from .suite.checks import (MODES, CheckError, HeavyRefused, check_ids, check_info, exit_status,
                           format_structured, format_text, mutation_self_test, resolve_id, run_all)

DEFAULT_CHARS = (0, 2, 3)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_token(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"{what}: not an integer: {text!r}") from None


def parse_chars(text: str) -> list[int]:
    out = []
    for tok in text.split(","):
        c = _int_token(tok.strip(), "--char")
        if c < 0 or c == 1:
            raise UsageError(f"--char: not a characteristic: {tok!r}")
        if c > 1 and any(c % d == 0 for d in range(2, int(c ** 0.5) + 1)):
            raise UsageError(f"--char: not prime: {tok!r}")
        out.append(c)
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twisted-sn", description="Verify the twisted S_n invariant identities.")
    p.add_argument("--check", default="all", help="comma-separated check ids or aliases, or 'all'")
    p.add_argument("--char", default=",".join(map(str, DEFAULT_CHARS)),
                   help="comma-separated characteristics (0 or a prime)")
    p.add_argument("--mode", default="auto", help="auto, symbolic or specialize")
    p.add_argument("--seed", default="0", help="seed for random points")
    p.add_argument("--points", default="20", help="agreeing points required in specialize mode")
    p.add_argument("--format", default="text", help="text or structured (one JSON object per line)")
    p.add_argument("--allow-heavy", action="store_true", help="permit symbolic mode for heavy checks")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed_ms from structured output")
    p.add_argument("--self-test", action="store_true", help="run the mutation self-test instead")
    p.add_argument("--list", action="store_true", help="list the checks and exit")
    return p


def _config(argv):
    args = build_parser().parse_args(argv)
    if args.mode not in MODES:
        raise UsageError(f"--mode: unknown mode {args.mode!r}")
    if args.format not in ("text", "structured"):
        raise UsageError(f"--format: unknown format {args.format!r}")
    checks = None
    if args.check != "all":
        checks = []
        for tok in args.check.split(","):
            try:
                checks.append(resolve_id(tok.strip()))
            except CheckError:
                raise UsageError(f"--check: unknown check id {tok.strip()!r}") from None
    args.checks = checks
    args.chars = parse_chars(args.char)
    args.seed = _int_token(args.seed, "--seed")
    args.points = _int_token(args.points, "--points")
    if args.points < 1:
        raise UsageError(f"--points: must be positive: {args.points}")
    if args.mode == "symbolic" and not args.allow_heavy:
        heavy = [c for c in (checks or check_ids()) if check_info(c).heavy]
        if checks and heavy:
            raise UsageError(f"{', '.join(heavy)} in symbolic mode is long-running; "
                             "pass --allow-heavy to run it")
        if heavy:
            # "all" in symbolic mode leaves heavy checks on their default mode
            args.mode_overrides = heavy
    return args


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = _config(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    if args.list:
        for cid in check_ids():
            info = check_info(cid)
            print(f"{cid}  {info.chars:<4} {'heavy' if info.heavy else '':<6} {info.location}")
        return 0
    if args.self_test:
        results = mutation_self_test(args.seed, args.points)
        for r in results:
            mark = "detected" if r.detected else "MISSED"
            print(f"{r.check}  {mark:<9} {r.label}: {r.original} -> {r.mutated}")
        missed = sum(not r.detected for r in results)
        print(f"{len(results) - missed}/{len(results)} mutations detected")
        return 1 if missed else 0
    try:
        reports = _run(args)
    except HeavyRefused as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    if args.format == "structured":
        print(format_structured(reports, timing=not args.no_timing))
    else:
        print(format_text(reports))
    return exit_status(reports)


def _run(args):
    heavy = set(getattr(args, "mode_overrides", []))
    keys = args.checks or check_ids()
    light = [k for k in keys if k not in heavy]
    reports = run_all(args.chars, args.mode, args.seed, args.points, light, args.allow_heavy) if light else []
    if heavy:
        for r in run_all(args.chars, "auto", args.seed, args.points, sorted(heavy)):
            if r.status != "skipped":
                r.notes.append("symbolic mode needs --allow-heavy; ran in its default mode")
            reports.append(r)
    return sorted(reports, key=lambda r: (r.id, args.chars.index(r.char)))


if __name__ == "__main__":
    sys.exit(main())
