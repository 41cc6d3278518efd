"""Permutations, the twisted action as substitution homs, and coset partitions."""

from __future__ import annotations

import itertools
import random

import pytest

from twisted_sn.algebra.hom import compose_homs, hom_equal, identity_hom
from twisted_sn.algebra.ratfunc import RatFunc, ratfunc
from twisted_sn.groups import (H1_GENS, H2_GENS, H3_GENS, H_GENS, R1, R2, R3, Perm, generate, is_fixed,
                               parse_cycles, perm_sign, perms, symmetric_group, twisted_hom, twisted_ring,
                               verify_coset_partition)


def test_perm_sign_examples():
    assert perm_sign(parse_cycles("(123)", 3)) == 1
    assert perm_sign(parse_cycles("(12)", 3)) == -1
    assert perm_sign(parse_cycles("(12345)", 5)) == 1


def test_invalid_perm_rejected():
    with pytest.raises(ValueError):
        Perm((1, 1, 2))


@pytest.mark.parametrize("text", ["1", "(12)", "(123)", "(24)(35)", "(15234)", "(13524)"])
def test_cycle_notation_round_trip(text):
    p = parse_cycles(text, 5)
    assert parse_cycles(str(p), 5) == p


def test_cycle_notation_matches_one_line():
    assert parse_cycles("(123)", 3).images == (2, 3, 1)
    assert parse_cycles("(24)(35)", 5).images == (1, 4, 5, 2, 3)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sign_is_a_homomorphism(n):
    for s, p in itertools.product(symmetric_group(n), repeat=2):
        assert perm_sign(s * p) == perm_sign(s) * perm_sign(p)


def test_twisted_hom_even_cycle():
    R = twisted_ring(3)
    h = twisted_hom(parse_cycles("(123)", 3), R)
    assert h.image("x1") == ratfunc(R.gen("x2"))
    assert h.image("x2") == ratfunc(R.gen("x3"))
    assert h.image("x3") == ratfunc(R.gen("x1"))


def test_twisted_hom_transposition_n4():
    R = twisted_ring(4)
    a = R.gen("a")
    h = twisted_hom(parse_cycles("(12)", 4), R)
    expect = {"x1": "x2", "x2": "x1", "x3": "x3", "x4": "x4"}
    for k, v in expect.items():
        assert h.image(k) == RatFunc(a, R.gen(v))


def test_twisted_identity_is_identity():
    R = twisted_ring(3)
    assert hom_equal(twisted_hom(Perm.identity(3), R), identity_hom(R))


def test_compose_examples():
    R = twisted_ring(3)
    t12 = twisted_hom(parse_cycles("(12)", 3), R)
    t13 = twisted_hom(parse_cycles("(13)", 3), R)
    c = twisted_hom(parse_cycles("(123)", 3), R)
    assert hom_equal(compose_homs(t12, t12), identity_hom(R))
    assert hom_equal(compose_homs(c, compose_homs(c, c)), identity_hom(R))
    prod = parse_cycles("(12)", 3) * parse_cycles("(13)", 3)
    assert perm_sign(prod) == 1
    assert hom_equal(compose_homs(t12, t13), twisted_hom(prod, R))


@pytest.mark.parametrize("n", [3, 4])
def test_action_law_exhaustive(n):
    R = twisted_ring(n)
    homs = {p: twisted_hom(p, R) for p in symmetric_group(n)}
    for s, p in itertools.product(homs, repeat=2):
        assert hom_equal(compose_homs(homs[s], homs[p]), homs[s * p])


def test_action_law_random_s5():
    R = twisted_ring(5)
    rng = random.Random(0)
    group = symmetric_group(5)
    for _ in range(50):
        s, p = rng.choice(group), rng.choice(group)
        assert hom_equal(compose_homs(twisted_hom(s, R), twisted_hom(p, R)), twisted_hom(s * p, R))


def test_is_fixed_examples():
    R3 = twisted_ring(3)
    x1, x2, x3, _ = R3.gens()
    c = twisted_hom(parse_cycles("(123)", 3), R3)
    assert is_fixed(x1 * x2 * x3, [c])
    R2 = twisted_ring(2)
    y1, y2, a = R2.gens()
    t = twisted_hom(parse_cycles("(12)", 2), R2)
    assert is_fixed(ratfunc(y1) + RatFunc(a, y2), [t])
    assert is_fixed(RatFunc(a * y1, y2), [t])
    assert not is_fixed(y1, [t])


def test_coset_partitions_hold_with_left_product():
    assert verify_coset_partition(5, perms(H1_GENS), "S_n", perms(R1), product="left").ok
    assert verify_coset_partition(5, perms(H2_GENS), perms(H_GENS), perms(R2), product="left").ok
    assert verify_coset_partition(5, perms(H3_GENS), "A_n", perms(R3), product="left").ok


def test_coset_orders():
    assert len(generate(perms(H1_GENS), 5)) * len(R1) == 120
    assert len(generate(perms(H2_GENS), 5)) * len(R2) == len(generate(perms(H_GENS), 5)) == 24
    assert len(generate(perms(H3_GENS), 5)) * len(R3) == 60


def test_right_product_fails_for_r1():
    # the representatives are for cosets mu o h, not h o mu
    res = verify_coset_partition(5, perms(H1_GENS), "S_n", perms(R1), product="right")
    assert not res.ok and res.witness


def test_duplicate_rep_fails():
    reps = perms(R3) + perms(["(234)"])
    res = verify_coset_partition(5, perms(H3_GENS), "A_n", reps, product="left")
    assert not res.ok and "both" in res.witness


def test_missing_rep_fails():
    res = verify_coset_partition(5, perms(H3_GENS), "A_n", perms(R3[:-1]), product="left")
    assert not res.ok and "not covered" in res.witness
