"""Check registry, runner, report serialization and the mutation self-test."""

from __future__ import annotations

import json

import pytest

from twisted_sn.constructions import (blowup_chain, build_conic_frame, char2_invariant_frame,
                                      conic_relation_check, maeda_basis)
from twisted_sn.constructions.frame import FrameError
from twisted_sn.suite.checks import (CATALOG, CheckError, CheckReport, HeavyRefused, check_info,
                                     exit_status, format_structured, format_text, mutation_self_test,
                                     resolve_id, run_all, run_check)


def test_catalog_has_22_checks():
    assert sorted(CATALOG) == [f"C{i:02d}" for i in range(1, 23)]


@pytest.mark.parametrize("alias,cid", [("ACTION_LAW", "C01"), ("MASUDA_IDENTITIES", "C04"),
                                       ("N3_TAU_TABLE", "C05"), ("COSET_PARTITIONS", "C10"),
                                       ("N5_TAU_TABLE", "C12")])
def test_aliases(alias, cid):
    assert resolve_id(alias) == cid


def test_masuda_identities_symbolic():
    rep = run_check("MASUDA_IDENTITIES", 0, "symbolic")
    assert rep.status == "pass" and rep.mode == "symbolic" and rep.claims > 0


def test_n3_tau_table_symbolic():
    assert run_check("N3_TAU_TABLE", 0, "symbolic").status == "pass"


def test_n5_tau_table_specialize():
    rep = run_check("N5_TAU_TABLE", 0, "specialize", seed=1, points=20)
    assert rep.status == "pass"
    assert rep.bound_log2 is not None and rep.bound_log2 < -30


def test_unknown_id_raises():
    with pytest.raises(CheckError, match="NOPE"):
        run_check("NOPE")


def test_incompatible_char_raises():
    with pytest.raises(CheckError):
        run_check("C09", 0)
    with pytest.raises(CheckError):
        run_check("C14", 2)


def test_heavy_symbolic_is_refused():
    with pytest.raises(HeavyRefused):
        run_check("C12", 0, "symbolic")
    assert check_info("C12").heavy


def test_unknown_mode_raises():
    with pytest.raises(CheckError):
        run_check("C04", 0, "fast")


@pytest.mark.parametrize("char,skipped", [(0, {"C09", "C19", "C20", "C21", "C22"}),
                                          (2, {"C08", "C14", "C15", "C16", "C17", "C18"}),
                                          (3, {"C09", "C19", "C20", "C21", "C22"})])
def test_run_all_skips_by_characteristic(char, skipped):
    light = ["C02", "C04", "C08", "C09", "C14", "C15", "C16", "C17", "C18", "C19", "C20", "C21", "C22"]
    light = [c for c in light if c not in {"C14", "C18"} or c in skipped]
    reps = run_all((char,), checks=light)
    assert {r.id for r in reps if r.status == "skipped"} == skipped & set(light)
    assert all(r.status == "pass" for r in reps if r.status != "skipped")


def test_n3_chain_degenerates_in_char_3():
    rep = run_check("C17", 3)
    assert rep.status == "pass"


def test_runs_are_deterministic():
    a = run_all((0, 2), checks=["C04", "C12", "C19"], include_skipped=False)
    b = run_all((0, 2), checks=["C04", "C12", "C19"], include_skipped=False)
    assert format_structured(a, timing=False) == format_structured(b, timing=False)


def test_serialization_maps_infinite_bound_to_null():
    rep = CheckReport("C04", "x", 0, "symbolic", "pass", 1.0, 3, bound_log2=float("-inf"))
    d = json.loads(rep.to_json(timing=False))
    assert d["bound_log2"] is None and "elapsed_ms" not in d
    assert json.loads(rep.to_json())["elapsed_ms"] == 1.0


def test_structured_output_is_json_lines():
    reps = run_all((0,), checks=["C02", "C03"])
    lines = format_structured(reps).splitlines()
    assert [json.loads(x)["id"] for x in lines] == ["C02", "C03"]
    assert "2 passed" in format_text(reps)


def test_exit_status():
    ok = CheckReport("C01", "", 0, "symbolic", "pass", 0.0)
    bad = CheckReport("C01", "", 0, "symbolic", "fail", 0.0, witness="w")
    vague = CheckReport("C01", "", 0, "specialize", "inconclusive", 0.0)
    assert exit_status([ok]) == 0
    assert exit_status([ok, bad]) == 1
    assert exit_status([vague]) == 1


def test_mutation_self_test_detects_all():
    results = mutation_self_test()
    assert len(results) == 10
    missed = [(r.check, r.label, r.mutated) for r in results if not r.detected]
    assert not missed
    assert all(r.original != r.mutated for r in results)


# -- construction entry points -------------------------------------------------------------


@pytest.mark.parametrize("n", [3, 4])
def test_conic_relation_check(n):
    assert conic_relation_check(n)


def test_conic_frame_rejects_other_n():
    with pytest.raises(FrameError):
        build_conic_frame(5)
    assert "conic relation" in {c.label for c in build_conic_frame(3).claims}


def test_blowup_chain_endpoints():
    assert blowup_chain(3)[-1][2] == "S1 + 4*a*S2**2"
    assert blowup_chain(3, "alternate")[-1][2] == "1 + 4*T6 + 4*a*T4**2*T6**2"
    assert blowup_chain(4)[-1][2] == "r5*(a*p5 - 2*a*q4 - 3*r5 + a*q4**2*r5 - p5*r5**2)"
    with pytest.raises(ValueError):
        blowup_chain(4, "alternate")


def test_char2_invariant_frame():
    assert char2_invariant_frame(3).claims[0].label == "b3 relation"
    with pytest.raises(FrameError):
        char2_invariant_frame(3, 3)


def test_maeda_basis_has_five_generators():
    fr = maeda_basis(2)
    assert {f"F{i}" for i in range(1, 6)} <= set(fr.defs)
