"""Constructed generators: worked values, dual-route checks and the corrected transcriptions."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from twisted_sn.algebra.fields import CoeffField
from twisted_sn.algebra.finite import specialization_field
from twisted_sn.algebra.poly import PolyRing
from twisted_sn.algebra.ratfunc import RatFunc
from twisted_sn.algebra.specialize import FVal, Point, specialize
from twisted_sn.constructions import char2, conic, maeda, small_n, v4
from twisted_sn.constructions.frame import Frame, FrameError
from twisted_sn.constructions.symmetric import elementary_symmetric, masuda_uv
from twisted_sn.groups import parse_cycles, twisted_hom, twisted_ring
from twisted_sn.suite.engine import select, verify


def _verify(frame: Frame, tables=None, labels=None, mode="symbolic", seed=0, points=20):
    return verify(frame, select(frame, tables=tables, labels=labels), mode, random.Random(seed), points)


def _single(frame: Frame, lhs: str, rhs: str, mode="symbolic"):
    frame.claim("probe", lhs, rhs, "probe")
    return _verify(frame, labels=["probe"], mode=mode).status


# -- symmetric functions and Masuda's u, v ------------------------------------------------


def test_elementary_symmetric():
    R = PolyRing(CoeffField(0, False), ["x1", "x2", "x3"])
    x1, x2, x3 = R.gens()
    assert elementary_symmetric(1, ["x1", "x2", "x3"], R) == x1 + x2 + x3
    assert elementary_symmetric(3, ["x1", "x2", "x3"], R) == x1 * x2 * x3
    assert specialize(elementary_symmetric(2, ["x1", "x2", "x3"], R), Point({"x1": 1, "x2": 2, "x3": 3})) == 11
    with pytest.raises(ValueError):
        elementary_symmetric(4, ["x1", "x2", "x3"], R)


def test_masuda_uv_values_and_invariance():
    R = twisted_ring(3)
    u, v = masuda_uv(R)
    pt = Point({"x1": 1, "x2": 2, "x3": 3, "a": 1})
    assert specialize(u, pt) == Fraction(7, 3)
    assert specialize(v, pt) == Fraction(5, 3)
    c = twisted_hom(parse_cycles("(123)", 3), R)
    assert c(u) == u and c(v) == v


def test_n2_generators_fixed():
    assert _verify(small_n.n2_frame()).status == "pass"


def test_involution_back_solve():
    assert _verify(small_n.involution_frame()).status == "pass"


# -- n = 4 --------------------------------------------------------------------------------


def test_v4_examples():
    fr = v4.build_v4_frame(0)
    assert _verify(fr, labels=["sigma(S)", "sigma(T)", "sigma(U)"]).status == "pass"
    assert _verify(fr, tables=["quartic"]).status == "pass"
    assert _verify(fr, tables=["V4 invariance"]).status == "pass"


@pytest.mark.parametrize("char,image", [(0, "-N"), (3, "-N"), (2, "N + 1")])
def test_tau_on_n(char, image):
    fr = v4.build_v4_frame(char)
    assert _single(fr, "tau(N)", image) == "pass"
    assert _verify(fr, labels=["sigma(P)", "tau(P)"]).status == "pass"


def test_tau_fixes_g_over_h():
    fgh = v4.build_n4_reduction(0)[0]
    assert _verify(fgh, labels=["tau(G/H)"]).status == "pass"


def test_wrong_image_fails_with_witness():
    fr = v4.build_v4_frame(0)
    out = _single(fr, "tau(N)", "N")
    assert out == "fail"


# -- Maeda basis --------------------------------------------------------------------------


@pytest.mark.parametrize("char", [0, 2, 3])
def test_symbolic_and_brute_force_maeda_agree(char):
    # dual route: orbit-sum expansion vs direct sums over S5, R1, R2, R3
    F = specialization_field(char)
    rng = random.Random(char)
    qs = maeda.maeda_symbolic(char)
    ring = maeda.maeda_ring(char)
    for _ in range(3):
        xs = [F.random(rng) for _ in range(5)]
        numeric = maeda.maeda_numeric(char, [FVal(F, x) for x in xs])
        pt = Point({**{f"x{i + 1}": xs[i] for i in range(5)}, "a": F.one}, F)
        for q, val in zip(qs, numeric):
            try:
                sym = specialize(q.ratfunc(), pt)
            except ZeroDivisionError:
                continue
            assert FVal(F, sym) == val
        assert ring.vars.names[:5] == tuple(f"x{i}" for i in range(1, 6))


def test_maeda_char2_f1_is_e3_over_e2():
    q = maeda.maeda_symbolic(2)[0].ratfunc()
    ring = q.ring
    e2 = elementary_symmetric(2, [f"x{i}" for i in range(1, 6)], ring)
    e3 = elementary_symmetric(3, [f"x{i}" for i in range(1, 6)], ring)
    assert q.equals(RatFunc(e3, e2))


@pytest.mark.parametrize("char", [0, 2])
def test_maeda_semi_invariance(char):
    for q in maeda.maeda_symbolic(char):
        for cyc in ("(123)", "(12345)"):
            ok, detail = maeda.semi_invariance(q, parse_cycles(cyc, 5))
            assert ok, detail


def test_semi_invariance_rejects_non_invariant():
    ring = maeda.maeda_ring(0)
    x1, x2 = ring.gen("x1"), ring.gen("x2")
    q = maeda.Quotient([x1 + 2 * x2], [ring.one])
    ok, _ = maeda.semi_invariance(q, parse_cycles("(123)", 5))
    assert not ok


@pytest.mark.parametrize("char", [0, 2])
def test_g_basis(char):
    assert _verify(maeda.build_g_basis(char)).status == "pass"


def test_maeda_tau_table_specialize_char2():
    out = _verify(maeda.maeda_frame(2), tables=["tau on F1..F5"], mode="specialize", points=20)
    assert out.status == "pass"
    assert out.bound_log2 < -30


# -- conic ----------------------------------------------------------------------------------


def test_printed_h4_display_fails():
    fr = conic.conic_frame(4, 0)
    assert _single(fr, "h", conic.H4_PRINTED, mode="specialize") == "fail"


def test_printed_u_scaling_fails():
    fr = conic.conic_frame(4, 0)
    fr.define("Up", "u*r/(8*(a*p**2 - q**2))")
    assert _single(fr, "rho(Up)*Up", "H", mode="specialize") == "fail"


def test_printed_v3_back_solve_fails():
    fr = conic.conic_frame(4, 0)
    assert _single(fr, "v3", "-a*p*r/(4*(a*p**2 - q**2))", mode="specialize") == "fail"


def test_n3_chain_char3_degenerate():
    fr = conic.n3_chain_frame(3)
    assert [c.label for c in fr.claims] == ["char 3 conic"]
    assert _verify(fr).status == "pass"


def test_chains_refuse_char2():
    with pytest.raises(FrameError):
        conic.n3_chain_frame(2)


def test_relation_derivative_at_singular_point():
    lhs, rhs = conic.N3_CHAIN[1][1], conic.N3_CHAIN[1][2]
    rel = conic.relation_poly(lhs, rhs, conic.relation_names(lhs, rhs), 0)
    pt = {"x": 0, "y": 0, "T1": 1, "T2": 0}
    assert not rel.derivative("T2").evaluate(pt)
    assert conic.verify_singular_point(rel, pt)


@pytest.mark.parametrize("case", conic.SINGULAR_CASES, ids=lambda c: c.label)
def test_singular_cases(case):
    ok, detail = conic.check_singular_case(case, random.Random(1))
    assert ok, detail


def test_smooth_point_is_not_singular():
    ok, detail = conic.smooth_point_case(random.Random(2))
    assert ok, detail


@pytest.mark.parametrize("row", conic.LINEAR_IN, ids=lambda r: r[0])
def test_final_relations_are_linear(row):
    _, lhs, rhs, var, _ = row
    ok, detail = conic.check_linear(lhs, rhs, var)
    assert ok, detail


# -- characteristic 2 ---------------------------------------------------------------------


def test_char2_frames_refuse_odd_characteristic():
    with pytest.raises(FrameError):
        char2.revoy_n3_frame(3)


def test_revoy_relations():
    assert _verify(char2.revoy_n3_frame()).status == "pass"
    assert _verify(char2.revoy_n4_frame()).status == "pass"


def test_u_relation_degree_one_in_u2():
    ok, _ = conic.check_linear(char2.REL_U, "0", "u2")
    assert ok


def test_printed_t5_fails():
    fr = char2.reduction_frame()
    fr.define("t5p", "(b4 + s2**3)/s2")
    assert _single(fr, char2.REL_T.replace("t5", "t5p"), "0", mode="specialize") == "fail"


def test_printed_p_and_q_images_fail():
    fr = char2.tau_s_b4_frame()
    fr.define("pp", char2.P_PRINTED)
    assert _single(fr, "tau(pp)", f"{char2.QUAD}/(a*pp)", mode="specialize") == "fail"
    fr2 = char2.tau_s_b4_frame()
    assert _single(fr2, "tau(q)", char2.TAU_Q_PRINTED, mode="specialize") == "fail"


# -- rho(u)*u = f through factorizations ------------------------------------------------------


@pytest.mark.parametrize("n", [3, 4])
def test_factored_rho_u_agrees_with_expansion(n):
    # dual route: exponent vectors vs full expansion of both sides
    fr = conic.t_from_z_frame(n, 0)
    assert _verify(fr, tables=["rho on u"]).status == "pass"
    assert conic.rho_u_factored(n, 0) == (True, None)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_factored_rho_u_rejects_wrong_sign(n):
    right = -1 if (n * (n - 1) // 2) % 2 else 1
    ok, detail = conic.rho_u_factored(n, 0, f_sign=-right)
    assert not ok and "rho(u)*u" in detail


def test_factored_rho_u_n5_matches_specialization():
    assert conic.rho_u_factored(5, 0)[0]
    out = _verify(conic.t_from_z_frame(5, 0), tables=["rho on u (n=5)"], mode="specialize")
    assert out.status == "pass"
