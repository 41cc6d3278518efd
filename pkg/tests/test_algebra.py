"""Polynomial and rational-function arithmetic, gcd, specialization and alpha reduction."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from twisted_sn.algebra.fields import CoeffField
from twisted_sn.algebra.finite import (ExtensionField, GaloisField, PrimeField, is_irreducible_bruteforce,
                                      specialization_field)
from twisted_sn.algebra.gcd import gcd
from twisted_sn.algebra.hom import FieldHom, identity_hom, substitute
from twisted_sn.algebra.poly import PolyRing
from twisted_sn.algebra.ratfunc import RatFunc, ratfunc
from twisted_sn.algebra.specialize import QQ, BadPoint, Point, specialize


def ring(names=("x", "y"), char=0, with_a=False, alpha=None):
    names = list(names) + (["a"] if with_a else [])
    return PolyRing(CoeffField(char, with_a), names, alpha=alpha)


# -- ring operations ----------------------------------------------------------------------


def test_difference_of_squares():
    R = ring()
    x, y = R.gens()
    assert (x + y) * (x - y) == x**2 - y**2


def test_frobenius_in_char_2():
    R = ring(char=2)
    x, y = R.gens()
    assert (x + y) ** 2 == x**2 + y**2


def test_cancellation_to_polynomial():
    R = ring()
    x, _ = R.gens()
    r = RatFunc(x**2 - 1, x - 1)
    assert r.is_polynomial()
    assert r.num == x + 1


def test_division_by_zero_raises():
    R = ring()
    x, _ = R.gens()
    with pytest.raises(ZeroDivisionError):
        RatFunc(x, R.zero)
    with pytest.raises(ZeroDivisionError):
        ratfunc(x) / ratfunc(R.zero)


def test_ring_mismatch_raises():
    x = ring().gen("x")
    z = ring(("z",)).gen("z")
    with pytest.raises((ValueError, TypeError)):
        x + z


def test_parameter_a_is_reserved():
    with pytest.raises(ValueError):
        PolyRing(CoeffField(0, True), ["a", "x"])


# -- gcd ----------------------------------------------------------------------------------


def test_gcd_shared_factor():
    R = ring()
    x, y = R.gens()
    assert gcd(x**2 - y**2, x**2 + 2 * x * y + y**2) == x + y


def test_gcd_with_zero_is_normalized_input():
    R = ring()
    x, _ = R.gens()
    assert gcd(2 * x + 2, R.zero) == x + 1
    assert gcd(R.zero, 2 * x + 2) == x + 1


def test_gcd_over_f3():
    # x**3 - x = x(x - 1)(x + 1) over F_3
    R = ring(("x",), char=3)
    x = R.gen("x")
    assert gcd(x**3 - x, x**2 - 1) == x**2 - 1


# -- normalization ------------------------------------------------------------------------


def test_unit_cancellation():
    R = ring()
    x, _ = R.gens()
    r = RatFunc(2 * x + 2, R.const(2))
    assert r.num == x + 1 and r.den == R.one


def test_common_factor_cancelled():
    R = ring()
    x, _ = R.gens()
    r = RatFunc(x**2 - 1, x**2 - 2 * x + 1)
    assert r.num == x + 1 and r.den == x - 1


def test_canonical_denominator_over_q_is_primitive_positive():
    R = ring()
    x, y = R.gens()
    r = RatFunc(x, Fraction(-1, 2) * y + Fraction(1, 3))
    coeffs = list(r.den.terms.values())
    assert all(Fraction(c).denominator == 1 for c in coeffs)
    assert r.den.leading_coefficient() > 0


def test_equal_elements_have_identical_forms():
    R = ring()
    x, y = R.gens()
    r1 = RatFunc(x * y - y, y**2)
    r2 = RatFunc(3 * x - 3, 3 * y)
    assert r1 == r2
    assert (r1.num, r1.den) == (r2.num, r2.den)
    assert hash(r1) == hash(r2)


def test_equals_examples():
    R = ring()
    x, y = R.gens()
    assert RatFunc(x**2 - 1, x - 1).equals(ratfunc(x + 1))
    assert not (ratfunc(x) / y).equals(ratfunc(y) / x)


# -- substitution -------------------------------------------------------------------------


def test_substitute_inversion_on_s1_and_s3():
    R = PolyRing(CoeffField(0, True), ["x1", "x2", "x3", "a"])
    x1, x2, x3, a = R.gens()
    h = FieldHom(R, R, {f"x{i}": RatFunc(a, R.gen(f"x{i}")) for i in (1, 2, 3)})
    s1, s2, s3 = x1 + x2 + x3, x1 * x2 + x2 * x3 + x1 * x3, x1 * x2 * x3
    assert substitute(ratfunc(s1), h) == ratfunc(a * s2) / s3
    assert substitute(ratfunc(s3), h) == ratfunc(a**3) / s3


def test_identity_substitution():
    R = ring()
    x, y = R.gens()
    e = ratfunc(x**2 + y) / (x - y)
    assert substitute(e, identity_hom(R)) == e


def test_substitution_with_vanishing_denominator_raises():
    R = ring()
    x, y = R.gens()
    h = FieldHom(R, R, {"x": ratfunc(y)})
    with pytest.raises(ZeroDivisionError):
        substitute(ratfunc(R.one) / (x - y), h)


# -- specialization -----------------------------------------------------------------------


def test_specialize_masuda_u_at_123():
    R = ring(("x1", "x2", "x3"))
    x1, x2, x3 = R.gens()
    u = RatFunc(x1 * x2**2 + x2 * x3**2 + x3 * x1**2 - 3 * x1 * x2 * x3,
                x1**2 + x2**2 + x3**2 - x1 * x2 - x2 * x3 - x3 * x1)
    assert specialize(u, Point({"x1": 1, "x2": 2, "x3": 3})) == Fraction(7, 3)


def test_specialize_zero_and_pole():
    R = ring()
    x, y = R.gens()
    assert specialize(ratfunc(x + y), Point({"x": 1, "y": -1})) == 0
    with pytest.raises(BadPoint):
        specialize(ratfunc(R.one) / (x - 1), Point({"x": 1, "y": 0}))


def test_specialization_fields():
    F0 = specialization_field(0)
    assert isinstance(F0, PrimeField) and F0.p == 2**62 - 57 and F0.p % 4 == 3
    F2 = specialization_field(2)
    assert isinstance(F2, GaloisField) and F2.order == 2**16
    assert is_irreducible_bruteforce(F2.modulus, 2)


def test_galois_field_axioms_sample():
    F = GaloisField(2, 16)
    rng = random.Random(5)
    for _ in range(200):
        x, y, z = (F.random(rng) for _ in range(3))
        assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
        if x != F.zero:
            assert F.mul(x, F.inv(x)) == F.one


@pytest.mark.parametrize("p", [1031, 10007])
def test_extension_field_for_mid_size_primes(p):
    F = specialization_field(p)
    assert isinstance(F, ExtensionField) and F.order == p**2
    assert is_irreducible_bruteforce(list(F.modulus), p)
    rng = random.Random(p)
    for _ in range(200):
        x, y, z = (F.random(rng) for _ in range(3))
        assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
        assert F.sub(F.add(x, y), y) == x
        if x:
            assert F.mul(x, F.inv(x)) == F.one
    assert F.from_rational(Fraction(1, 2)) == F.inv(F.from_int(2))


# -- alpha --------------------------------------------------------------------------------


def test_alpha_reduction():
    R = PolyRing(CoeffField(0, True), ["x", "al", "a"], alpha="al")
    x, al, a = R.gens()
    assert al * al == a
    assert al**3 * x == a * al * x
    assert (al + x) * (al - x) == a - x**2


# -- derivatives --------------------------------------------------------------------------


def test_derivatives():
    R = ring()
    x, y = R.gens()
    assert (x**2 * y).derivative("x") == 2 * x * y
    R2 = ring(char=2)
    assert (R2.gen("x") ** 2).derivative("x") == R2.zero
    with pytest.raises((KeyError, ValueError)):
        (x * y).derivative("z")


def test_ratfunc_quotient_rule():
    R = ring()
    x, y = R.gens()
    r = ratfunc(x) / (x + y)
    assert r.derivative("x") == ratfunc(y) / (x + y) ** 2


# -- property tests -----------------------------------------------------------------------

small_coeffs = st.integers(min_value=-5, max_value=5)


def _poly(R, draw_terms):
    x, y = R.gens()
    out = R.zero
    for c, i, j in draw_terms:
        out = out + c * x**i * y**j
    return out


terms = st.lists(st.tuples(small_coeffs, st.integers(0, 3), st.integers(0, 3)), max_size=5)


@pytest.mark.parametrize("char", [0, 2, 3, 10007])
@settings(max_examples=50, deadline=None)
@given(terms, terms, terms)
def test_ring_axioms(char, ta, tb, tc):
    R = ring(char=char)
    a, b, c = (_poly(R, t) for t in (ta, tb, tc))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == R.zero


@settings(max_examples=100, deadline=None)
@given(terms, terms, terms, terms)
def test_normalize_idempotent_and_field_ops(ta, tb, tc, td):
    R = ring()
    a, b, c, d = (_poly(R, t) for t in (ta, tb, tc, td))
    if not b or not d:
        return
    r, s = RatFunc(a, b), RatFunc(c, d)
    assert RatFunc(r.num, r.den) == r
    assert (r + s) - s == r
    if s:
        assert (r * s) / s == r


@settings(max_examples=50, deadline=None)
@given(terms, terms)
def test_leibniz_rule(ta, tb):
    R = ring()
    a, b = _poly(R, ta), _poly(R, tb)
    assert (a * b).derivative("x") == a.derivative("x") * b + a * b.derivative("x")


@settings(max_examples=50, deadline=None)
@given(terms, terms, st.integers(-20, 20), st.integers(-20, 20))
def test_specialize_is_a_ring_map(ta, tb, vx, vy):
    R = ring()
    a, b = _poly(R, ta), _poly(R, tb)
    pt = Point({"x": vx, "y": vy})
    assert specialize(a * b, pt) == specialize(a, pt) * specialize(b, pt)
    assert specialize(a + b, pt) == specialize(a, pt) + specialize(b, pt)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(small_coeffs, st.integers(0, 3), st.integers(0, 3)), max_size=4),
       st.lists(st.tuples(small_coeffs, st.integers(0, 3), st.integers(0, 3)), max_size=4))
def test_alpha_reduction_is_multiplicative(ta, tb):
    R = PolyRing(CoeffField(0, True), ["x", "al", "a"], alpha="al")
    x, al, _ = R.gens()

    def build(ts):
        out = R.zero
        for c, i, j in ts:
            out = out + c * x**i * al**j
        return out

    p, q = build(ta), build(tb)
    assert all(e[1] <= 1 for e in (p * q).terms)
    assert (p * q) == p.reduce_alpha() * q.reduce_alpha()


def test_specialize_commutes_with_substitution():
    # specialize(h(e), pt) equals specialize(e, h(pt)) at good points
    R = PolyRing(CoeffField(0, True), ["x1", "x2", "a"])
    x1, x2, a = R.gens()
    h = FieldHom(R, R, {"x1": RatFunc(a, x2), "x2": RatFunc(a, x1)})
    e = ratfunc(x1 + 2 * x2) / (x1 * x2 + 1)
    rng = random.Random(3)
    for _ in range(20):
        pt = {n: Fraction(rng.randint(1, 9)) for n in ("x1", "x2", "a")}
        pulled = {"x1": pt["a"] / pt["x2"], "x2": pt["a"] / pt["x1"], "a": pt["a"]}
        assert specialize(substitute(e, h), Point(pt, QQ)) == specialize(e, Point(pulled, QQ))
