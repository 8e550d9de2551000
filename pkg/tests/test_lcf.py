from fractions import Fraction

import pytest

from padic.balls import Ball, BallRelation, ball_relation, unit_ball
from padic.lcf import (
    OverlappingPiecesError,
    PiecewiseConstant,
    common_refinement,
    indicator,
    inner_product,
    linear_combine,
    omega,
    refine,
)
from padic.mock import random_function, random_member, random_padic
from padic.numbers import PAdicRational
from wavelets.basis import mother_psi


def q(p, value):
    return PAdicRational.from_fraction(p, Fraction(value))


def test_evaluate_omega():
    f = omega(2)
    assert f(q(2, 1)) == 1
    assert f(q(2, Fraction(1, 2))) == 0
    assert f.scale(2)(q(2, 0)) == 2


def test_overlapping_pieces_are_rejected():
    with pytest.raises(OverlappingPiecesError):
        PiecewiseConstant.from_pieces(2, [(unit_ball(2), 1), (Ball(q(2, 0), 1), 2)])


def test_equal_siblings_merge_and_zeros_vanish():
    f = PiecewiseConstant.from_pieces(3, [(Ball(q(3, d), 1), 5) for d in range(3)])
    assert f.pieces == ((unit_ball(3), 5),)
    assert PiecewiseConstant.from_pieces(3, [(unit_ball(3), 0)]).pieces == ()


def test_common_refinement():
    f = omega(2)
    assert [row[0] for row in common_refinement(f, f)] == [unit_ball(2)]
    rows = common_refinement(f, mother_psi(2))
    assert sorted(ball.radius_exp for ball, _, _ in rows) == [1, 1]
    assert sorted(round(v.real) for _, _, v in rows) == [-1, 1]
    assert all(u == 1 for _, u, _ in rows)


def test_refinement_preserves_integrals(rng):
    for _ in range(30):
        f = random_function(rng, 3, 1, 1)
        g = random_function(rng, 3, 0, 2)
        rows = common_refinement(f, g)
        for a, _, _ in rows:
            for b, _, _ in rows:
                assert a == b or ball_relation(a, b) is BallRelation.DISJOINT
        assert abs(sum(u * float(b.measure) for b, u, _ in rows) - f.integral()) < 1e-12
        assert abs(sum(v * float(b.measure) for b, _, v in rows) - g.integral()) < 1e-12


def test_inner_product():
    assert inner_product(omega(5), omega(5)) == 1
    assert abs(inner_product(mother_psi(2), omega(2))) < 1e-15
    assert abs(inner_product(mother_psi(3), mother_psi(3)) - 1) < 1e-12


def test_inner_product_is_conjugate_linear_in_second_slot(rng):
    f, g = random_function(rng, 2, 1, 1), random_function(rng, 2, 1, 1)
    c = 2 - 3j
    assert abs(inner_product(f, g.scale(c)) - c.conjugate() * inner_product(f, g)) < 1e-12
    assert abs(inner_product(f, f) - f.norm_squared()) < 1e-12


def test_modulate_omega_gives_mother_wavelet():
    psi = omega(2).modulate(PAdicRational.power(2, -1))
    assert psi.max_abs_difference(mother_psi(2)) < 1e-15
    assert psi(q(2, 0)) == 1
    assert abs(psi(q(2, 1)) + 1) < 1e-12
    assert omega(2).modulate(PAdicRational.zero(2)) == omega(2)


def test_linear_combine():
    f = omega(3)
    assert linear_combine([(1, f), (0, mother_psi(3))]).max_abs_difference(f) < 1e-15
    assert (f - f).pieces == ()


def test_affine_pullback_matches_pointwise_definition(rng):
    f = random_function(rng, 2, 1, 1)
    a, b = PAdicRational.power(2, -1) * -1, q(2, Fraction(3, 2))
    g = f.affine_pullback(a, b)
    outer = Ball(PAdicRational.zero(2), -3)
    for _ in range(200):
        x = random_member(rng, outer, digits=6)
        assert g(x) == f(a * x + b)
    with pytest.raises(ValueError):
        f.affine_pullback(q(2, 3), b)


def test_integral_over_ball():
    psi = mother_psi(2)
    assert abs(psi.integral()) < 1e-15
    assert psi.integral_over(Ball(q(2, 0), 1)) == 0.5
    assert abs(psi.integral_over(Ball(q(2, 1), 3)) + 0.125) < 1e-15
    assert indicator(Ball(q(2, 0), 2)).integral_over(unit_ball(2)) == 0.25


def test_json_round_trip_of_a_single_function(rng):
    f = random_function(rng, 3, 1, 1)
    assert PiecewiseConstant.from_json(f.to_json()) == f


@pytest.mark.parametrize("p", [2, 3])
def test_modulation_is_a_unitary_group_action(rng, p):
    for _ in range(20):
        f = random_function(rng, p, int(rng.integers(0, 2)), int(rng.integers(0, 2)))
        a, b = random_padic(rng, p, (-3, 1)), random_padic(rng, p, (-3, 1))
        twice = f.modulate(a).modulate(b)
        assert twice.max_abs_difference(f.modulate(a + b)) < 1e-12
        assert abs(f.modulate(a).norm_squared() - f.norm_squared()) < 1e-12


@pytest.mark.parametrize("p", [2, 3])
def test_inner_product_is_hermitian(rng, p):
    for _ in range(20):
        f = random_function(rng, p, 1, 1)
        g = random_function(rng, p, int(rng.integers(-1, 2)), 2)
        assert abs(inner_product(f, g) - inner_product(g, f).conjugate()) < 1e-12


def test_evaluation_agrees_with_refinement_table(rng):
    p = 2
    f = random_function(rng, p, 1, 1)
    g = random_function(rng, p, 2, 0)
    h = random_function(rng, p, 0, 2).modulate(PAdicRational.power(p, -1))
    c1, c2, c3 = 1 - 2j, 0.5, -3j
    combined = linear_combine([(1, linear_combine([(c1, f), (c2, g)])), (c3, h)])
    rows = refine(f, g, h, combined)
    outer = Ball(PAdicRational.zero(p), -3)
    for _ in range(1000):
        x = random_member(rng, outer, digits=8)
        expected = (f(x), g(x), h(x), combined(x))
        holding = [values for ball, values in rows if ball.contains(x)]
        assert len(holding) <= 1
        assert (holding[0] if holding else (0j, 0j, 0j, 0j)) == expected
        assert abs(combined(x) - (c1 * f(x) + c2 * g(x) + c3 * h(x))) < 1e-12
