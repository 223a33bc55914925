import random
from fractions import Fraction

import pytest

from plinth.casebook import (
    PLANE,
    QuadricRing,
    danielewski_checks,
    danielewski_derivation,
    divide_out,
    example1_conductor_check,
    example1_membership,
    example1_phi_separation,
    sigma_hat,
    sl2_mod_n_checks,
)
from plinth.polyring import PolyError, VariableSet
from util import random_poly


def test_membership_examples():
    assert example1_membership(PLANE.poly("x*y^5"))
    assert not example1_membership(PLANE.poly("y"))
    assert example1_membership(PLANE.poly("3 + 2*x*y"))
    assert example1_membership(PLANE.poly("7"))
    assert example1_membership(PLANE.zero())


def test_membership_closed_under_ring_operations():
    rng = random.Random(31)
    members = []
    while len(members) < 12:
        f = random_poly(rng, PLANE, max_terms=4)
        # force into R: multiply the nonconstant part by x
        g = f * PLANE.variable("x") + PLANE.constant(rng.randint(-3, 3))
        members.append(g)
    for i in range(0, 12, 2):
        a, b = members[i], members[i + 1]
        assert example1_membership(a + b)
        assert example1_membership(a * b)


def test_conductor_cases():
    r = example1_conductor_check(PLANE.poly("x"), 6)
    assert r.ok and r.params["case"] == "case_m0"
    r = example1_conductor_check(PLANE.poly("1 + x*y"), 6)
    assert r.ok and r.params["case"] == "case_R_minus_m0"
    r = example1_conductor_check(PLANE.poly("y"), 6)
    assert r.ok and r.params["case"] == "case_not_in_R"
    with pytest.raises(PolyError):
        example1_conductor_check(PLANE.zero())


def test_conductor_more_polynomials():
    for text, case in (
        ("x*y^2", "case_m0"),
        ("5 + x^2*y", "case_R_minus_m0"),
        ("y^2 + x", "case_not_in_R"),
        ("3", "case_R_minus_m0"),
    ):
        r = example1_conductor_check(PLANE.poly(text), 5)
        assert r.ok, (text, r.details)
        assert r.params["case"] == case


def test_phi_separation_sampling():
    assert example1_phi_separation(300).ok


def test_phi_collapse_on_x_zero_line():
    gens = [PLANE.poly("x" if k == 0 else f"x*y^{k}") for k in range(7)]
    p = {"x": Fraction(0), "y": Fraction(5)}
    q = {"x": Fraction(0), "y": Fraction(7)}
    assert all(g.evaluate(p) == g.evaluate(q) == 0 for g in gens)


def test_quadric_reduce_idempotent_and_sound():
    Q = QuadricRing()
    rng = random.Random(33)
    for _ in range(50):
        f = random_poly(rng, Q.ambient, max_terms=5, max_exp=4)
        nf = Q.reduce(f)
        assert Q.is_normal(nf)
        assert Q.reduce(nf) == nf
        # soundness: the difference is divisible by the quadric relation
        assert divide_out(f - nf, Q.ambient.poly("y^2 - y - x*z")).is_zero()


def test_quadric_normal_form_respects_products():
    Q = QuadricRing()
    rng = random.Random(34)
    for _ in range(60):
        f = random_poly(rng, Q.ambient, max_terms=4, max_exp=3)
        g = random_poly(rng, Q.ambient, max_terms=4, max_exp=3)
        assert Q.mul(f, g) == Q.reduce(Q.reduce(f) * Q.reduce(g))


def test_divide_out_exact_multiples():
    A = VariableSet(("a", "d", "b", "c"))
    g = A.poly("a*d - b*c - 1")
    q = A.poly("a*b - 3*c + 2")
    assert divide_out(q * g, g).is_zero()
    assert divide_out(q * g + A.one(), g) == A.one()


def test_danielewski_derivation_kills_quadric():
    D = danielewski_derivation()
    Q = QuadricRing()
    assert D.apply(Q.quadric).is_zero()
    assert D.local_slice_check(Q.ambient.variable("z"), Q.ambient.variable("y"))


def test_danielewski_full_suite():
    rep = danielewski_checks(samples=15, seed=3)
    assert rep.ok, rep.details


def test_danielewski_flow_preserves_quadric_ideal():
    D = danielewski_derivation()
    Q = QuadricRing()
    flowed = D.exp_flow(Q.quadric)
    assert flowed == Q.quadric.lift(flowed.ambient)


def test_sigma_hat_involution():
    Q = QuadricRing()
    R = Q.ambient
    assert sigma_hat(Q.quadric) == Q.quadric
    rng = random.Random(35)
    for _ in range(20):
        f = random_poly(rng, R, max_terms=4)
        assert sigma_hat(sigma_hat(f)) == f


def test_sl2_mod_n_suite():
    rep = sl2_mod_n_checks(degree_bound=6)
    assert rep.ok, rep.details
    assert any("commutation sign: +1" in str(note) for note in rep.details)
