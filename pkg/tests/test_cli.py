"""Command-line flags, output formats and exit codes."""

from __future__ import annotations

import json

import pytest

from twisted_sn.cli import main


def test_single_check_passes(capsys):
    assert main(["--check", "C04", "--char", "0"]) == 0
    out = capsys.readouterr().out
    assert "C04" in out and "1 passed" in out


def test_unknown_check_is_usage_error(capsys):
    assert main(["--check", "NOPE"]) == 2
    assert "NOPE" in capsys.readouterr().err


def test_heavy_symbolic_refused(capsys):
    assert main(["--check", "C12", "--mode", "symbolic"]) == 2
    assert "--allow-heavy" in capsys.readouterr().err


@pytest.mark.parametrize("argv,token", [(["--char", "4"], "4"), (["--char", "x"], "x"),
                                        (["--format", "xml"], "xml"), (["--mode", "fast"], "fast"),
                                        (["--points", "0"], "0"), (["--bogus"], "--bogus")])
def test_bad_arguments_exit_2(capsys, argv, token):
    assert main(argv) == 2
    assert token in capsys.readouterr().err


def test_structured_output(capsys):
    assert main(["--check", "C02,C19", "--char", "0,2", "--format", "structured", "--no-timing"]) == 0
    rows = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert [(r["id"], r["char"], r["status"]) for r in rows] == [
        ("C02", 0, "pass"), ("C02", 2, "pass"), ("C19", 0, "skipped"), ("C19", 2, "pass")]
    assert all("elapsed_ms" not in r for r in rows)


def test_alias_accepted(capsys):
    assert main(["--check", "COSET_PARTITIONS", "--char", "0"]) == 0
    assert "C10" in capsys.readouterr().out


def test_list(capsys):
    assert main(["--list"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 22


def test_self_test(capsys):
    assert main(["--self-test"]) == 0
    assert "10/10 mutations detected" in capsys.readouterr().out
