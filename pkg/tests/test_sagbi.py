import random
from fractions import Fraction

import pytest

from plinth.polyring import Monomial, VariableSet
from plinth.roberts import roberts_action
from plinth.sagbi import (
    GeneratorSet,
    SubductionError,
    monomial_algebra_member,
    subduct,
    tete_a_tetes,
    tete_a_tete_difference,
    verify_sagbi,
    x_ideal_membership,
)

RA = roberts_action()
R7 = RA.ring


def mono(**kw):
    return Monomial(tuple((R7.index(k), v) for k, v in kw.items()))


def assert_replays(cert, G, f):
    assert cert.replay(G) == f


def test_factorization_mixed_with_u():
    # x1^3 x3^3 y2 z^(n+m-1) factors as (x3 z^n)(x3 z^(m-1))(x3 z^0 ... )
    G = RA.catalog(3)
    n, m = 2, 3
    target = mono(x1=3, x3=2, y2=1, z=n + m - 1)
    got = monomial_algebra_member(target, G)
    assert got is not None
    prod = Monomial(())
    for name in got:
        prod = prod * G.lt[name][0]
    assert prod == target


def test_factorization_trivial_cases():
    G = RA.catalog(1)
    assert monomial_algebra_member(Monomial(()), G) == ()
    small = GeneratorSet(
        R7, [("m12", R7.poly("x1^3*y2")), ("b", R7.poly("x1*z"))]
    )
    assert monomial_algebra_member(mono(x2=1), small) is None


def test_factorization_prefers_fewest_factors():
    G = GeneratorSet(
        R7,
        [
            ("a", R7.poly("x1")),
            ("b", R7.poly("x1^2")),
        ],
    )
    # x1^2 can be a*a or b; fewest factors wins
    assert G.factorization(mono(x1=2)) == ("b",)
    # x1^3 must be a*b (2 factors) not a*a*a
    assert G.factorization(mono(x1=3)) == ("a", "b")


def test_subduct_generator_single_step():
    G0 = RA.catalog(0)
    cert = subduct(RA.u12, G0)
    assert cert.ok and len(cert.steps) == 1
    assert cert.steps[0].factors == ("u12",)
    assert_replays(cert, G0, RA.u12)


def test_subduct_y1_leaves_remainder():
    G = RA.catalog(2)
    cert = subduct(R7.variable("y1"), G)
    assert cert.complete
    assert cert.remainder == R7.variable("y1")
    assert monomial_algebra_member(mono(y1=1), G) is None
    assert_replays(cert, G, R7.variable("y1"))


def test_subduct_tete_a_tete_difference_to_zero():
    G = RA.catalog(2)
    diff = RA.beta(1, 1) * RA.beta(2, 1) - RA.beta(1, 0) * RA.beta(2, 2)
    cert = subduct(diff, G)
    assert cert.ok
    assert_replays(cert, G, diff)


def test_subduct_budget_flags_incomplete():
    G = RA.catalog(1)
    f = RA.beta(1, 1) * RA.beta(2, 1) * RA.u12 + RA.u13 * RA.u23
    cert = subduct(f, G, max_steps=1)
    assert not cert.complete
    assert_replays(cert, G, f)


def test_subduction_strictly_decreases_leading_monomial():
    rng = random.Random(20)
    G = RA.catalog(2)
    key = R7.monomial_key
    for _ in range(20):
        # random algebra combination
        f = R7.zero()
        for _ in range(rng.randint(1, 3)):
            names = [rng.choice(G.names) for _ in range(rng.randint(1, 3))]
            term = R7.constant(Fraction(rng.randint(-4, 4)))
            for nm in names:
                term = term * G.polys[nm]
            f = f + term
        cert = subduct(f, G)
        assert cert.ok  # algebra combinations of a verified basis reach 0
        assert_replays(cert, G, f)
        lts = []
        cur = f
        for step in cert.steps:
            lts.append(key(cur.leading_monomial()))
            piece = G.product(step.factors).scale(step.coefficient)
            cur = cur - piece
        assert lts == sorted(lts, reverse=True)
        assert len(set(lts)) == len(lts)


def test_tete_a_tetes_small():
    G = RA.catalog(1)
    tts = tete_a_tetes(G, 4)
    pairs = {(tt.left, tt.right) for tt in tts}
    assert (("b1_0", "b2_1"), ("b1_1", "b2_0")) in pairs
    for tt in tts:
        left = Monomial(())
        for nm in tt.left:
            left = left * G.lt[nm][0]
        right = Monomial(())
        for nm in tt.right:
            right = right * G.lt[nm][0]
        assert left == right == tt.product
        assert tt.left != tt.right


def test_tete_a_tetes_cubic_family_present():
    G = RA.catalog(1)
    tts = tete_a_tetes(G, 8)
    cubic = {
        (tt.left, tt.right)
        for tt in tts
        if len(tt.left) == 4 and ("u23" in tt.left or "u13" in tt.left)
    }
    assert (("b1_0", "b1_0", "b1_0", "u23"), ("b2_0", "b2_0", "b2_0", "u13")) in {
        (tuple(sorted(l)), tuple(sorted(r))) for l, r in cubic
    } | {(tuple(sorted(r)), tuple(sorted(l))) for l, r in cubic}


def test_tete_a_tetes_independent_leading_terms_empty():
    G = GeneratorSet(R7, [("x1", R7.variable("x1")), ("y1", R7.variable("y1"))])
    assert tete_a_tetes(G, 6) == []


def test_verify_sagbi_s0():
    rep = verify_sagbi(RA.catalog(0), 10)
    assert rep.ok


def test_verify_sagbi_s1_bound8():
    rep = verify_sagbi(RA.catalog(1), 8)
    assert rep.ok


def test_verify_sagbi_reports_failure_for_non_sagbi_set():
    # drop u12: the difference x2*b1_1 - x1*b2_1 = x3^2*u12 gets stuck
    gens = [("u13", RA.u13), ("u23", RA.u23)]
    for i in (1, 2, 3):
        for n in (0, 1):
            gens.append((RA.generator_name(i, n), RA.beta(i, n)))
    G = GeneratorSet(R7, gens)
    rep = verify_sagbi(G, 6)
    assert not rep.ok
    cert = subduct(R7.variable("x2") * RA.beta(1, 1) - R7.variable("x1") * RA.beta(2, 1), G)
    assert cert.remainder == R7.poly("x3^2") * RA.u12


def test_x_ideal_membership_beta_square():
    cert = RA.square_in_x_ideal(1, 1)
    assert cert.ok
    G = RA.catalog(2)
    square = RA.beta(1, 1) ** 2
    assert cert.replay(G) == square
    for step in cert.steps:
        assert step.prefix in ("x1", "x2", "x3")


def test_x_ideal_membership_u12_square_fails():
    G = RA.catalog(2)
    cert = x_ideal_membership(RA.u12 ** 2, G, ("x1", "x2", "x3"))
    assert not cert.ok
    assert cert.stuck is not None
    assert cert.stuck == mono(x1=6, y2=2)


def test_x_ideal_membership_single_step():
    G = RA.catalog(1)
    f = R7.variable("x1") * RA.u12
    cert = x_ideal_membership(f, G, ("x1", "x2", "x3"))
    assert cert.ok and len(cert.steps) == 1
    assert cert.steps[0].prefix == "x1"
    assert cert.steps[0].factors == ("u12",)
    assert_replays(cert, G, f)


def test_certificate_text_and_dict():
    G = RA.catalog(0)
    cert = subduct(RA.u12 * RA.u23, G)
    text = cert.to_text()
    assert "remainder 0" in text
    d = cert.to_dict()
    assert d["complete"] is True
    assert d["remainder"] == "0"


def test_generator_set_validation():
    with pytest.raises(SubductionError):
        GeneratorSet(R7, [("a", R7.zero())])
    with pytest.raises(SubductionError):
        GeneratorSet(R7, [("a", R7.poly("x1")), ("a", R7.poly("x2"))])


def test_invariants_of_bounded_z_degree_subduct_over_catalog():
    # consistency with the z-degree filtration: invariants with z-degree
    # <= N land in the span of S_N under subduction
    for N in (0, 1):
        G = RA.catalog(N)
        for degree in ((3, 3, 0), (3, 2, 2), (4, 4, 4), (3, 3, 3)):
            for f in RA.graded_invariants_z_capped(degree, N):
                cert = subduct(f, G)
                assert cert.ok, (N, degree, str(f))
