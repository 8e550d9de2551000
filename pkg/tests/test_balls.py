from fractions import Fraction

import pytest

from padic.balls import (
    Ball,
    BallRelation,
    ball_children,
    ball_measure,
    ball_relation,
    enclosing_ball,
    split_around,
    unit_ball,
)
from padic.mock import random_ball, random_member
from padic.numbers import PAdicRational, PrimeMismatchError


def q(p, value):
    return PAdicRational.from_fraction(p, Fraction(value))


def B(p, center, k):
    return Ball(q(p, center), k)


@pytest.mark.parametrize(
    "ball, expected",
    [(B(2, 0, 0), Fraction(1)), (B(2, 0, 2), Fraction(1, 4)), (B(3, 0, -1), Fraction(3))],
)
def test_ball_measure(ball, expected):
    assert ball_measure(ball) == expected


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (B(2, 0, 1), B(2, 1, 1), BallRelation.DISJOINT),
        (B(2, 0, 0), B(2, 0, 0), BallRelation.EQUAL),
        (B(2, 2, 1), B(2, 0, 0), BallRelation.SUBSET),
        (B(2, 0, 0), B(2, 2, 1), BallRelation.SUPERSET),
        (B(3, Fraction(1, 3), 0), B(3, 0, 0), BallRelation.DISJOINT),
    ],
)
def test_ball_relation(a, b, expected):
    assert ball_relation(a, b) is expected


def test_ball_relation_needs_one_prime():
    with pytest.raises(PrimeMismatchError):
        ball_relation(B(2, 0, 0), B(3, 0, 0))


def test_children_of_unit_ball():
    assert ball_children(unit_ball(2)) == [B(2, 0, 1), B(2, 1, 1)]
    assert ball_children(B(2, Fraction(1, 2), 0)) == [B(2, Fraction(1, 2), 1), B(2, Fraction(3, 2), 1)]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_children_partition_their_parent(rng, p):
    for _ in range(20):
        ball = random_ball(rng, Ball(PAdicRational.zero(p), -2), int(rng.integers(-2, 3)))
        children = ball_children(ball)
        assert len(children) == p
        assert sum(child.measure for child in children) == ball.measure
        for i, a in enumerate(children):
            assert a.parent() == ball
            for b in children[i + 1 :]:
                assert ball_relation(a, b) is BallRelation.DISJOINT


def test_center_choice_does_not_matter(rng):
    for p in (2, 3):
        for _ in range(100):
            ball = random_ball(rng, Ball(PAdicRational.zero(p), -3), int(rng.integers(-3, 4)))
            member = random_member(rng, ball)
            assert ball.contains(member)
            assert ball.recenter(member) == ball
            assert Ball(member, ball.radius_exp) == ball


def test_large_ball_has_zero_center():
    assert B(2, Fraction(5, 2), -1).center.is_zero()
    assert B(2, Fraction(1, 4), -1).center == q(2, Fraction(1, 4))


def test_enclosing_ball():
    balls = [B(2, 0, 2), B(2, 1, 3)]
    assert enclosing_ball(balls) == unit_ball(2)
    assert enclosing_ball(balls, [q(2, Fraction(1, 2))]) == B(2, 0, -1)
    assert enclosing_ball([], [q(3, 7)]) == B(3, 7, 0)


def test_split_around_is_a_minimal_partition():
    root = unit_ball(2)
    inner = [B(2, 0, 3)]
    parts = list(split_around(root, inner))
    assert sum(part.measure for part in parts) == root.measure
    assert B(2, 0, 3) in parts
    assert sorted(part.radius_exp for part in parts) == [1, 2, 3, 3]


def test_descendants():
    ball = unit_ball(3)
    assert ball.descendants(0) == [ball]
    level = ball.descendants(2)
    assert len(level) == 9
    assert all(ball.contains_ball(sub) for sub in level)
