"""
p-adic balls ``{x : |x - center|_p <= p**(-radius_exp)}`` with exact Haar
measure, normalized so that ``Z_p`` has measure one.

The center is canonicalized to the unique representative whose digits at
positions ``>= radius_exp`` are all zero, so two balls are equal exactly when
their fields are equal, whatever member was used to build them.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .numbers import INFINITE_VALUATION, PAdicRational, PrimeMismatchError, valuation

__all__ = [
    "Ball",
    "BallRelation",
    "ball_children",
    "ball_measure",
    "ball_relation",
    "enclosing_ball",
    "split_around",
    "unit_ball",
]


class BallRelation(str, Enum):
    DISJOINT = "disjoint"
    SUBSET = "a⊆b"
    SUPERSET = "b⊆a"
    EQUAL = "equal"


def _canonical_center(center: PAdicRational, k: int) -> PAdicRational:
    p, m, e = center.prime, center.mantissa, center.exponent
    if k + e <= 0:
        return PAdicRational.zero(p)
    return PAdicRational(p, m % p ** (k + e), e)


@dataclass(frozen=True)
class Ball:
    center: PAdicRational
    radius_exp: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", _canonical_center(self.center, self.radius_exp))

    @property
    def prime(self) -> int:
        return self.center.prime

    @property
    def measure(self) -> Fraction:
        return Fraction(self.prime) ** (-self.radius_exp)

    def contains(self, x: PAdicRational) -> bool:
        if x.prime != self.prime:
            raise PrimeMismatchError(f"point is {x.prime}-adic, ball is {self.prime}-adic")
        v = valuation(x - self.center)
        return v == INFINITE_VALUATION or v >= self.radius_exp

    def contains_ball(self, other: "Ball") -> bool:
        return other.radius_exp >= self.radius_exp and self.contains(other.center)

    def recenter(self, x: PAdicRational) -> "Ball":
        """Same ball described from another member ``x``."""
        if not self.contains(x):
            raise ValueError(f"{x} is not a member of {self}")
        return Ball(x, self.radius_exp)

    def parent(self) -> "Ball":
        return Ball(self.center, self.radius_exp - 1)

    def children(self) -> list["Ball"]:
        step = PAdicRational.power(self.prime, self.radius_exp)
        return [Ball(self.center + step * d, self.radius_exp + 1) for d in range(self.prime)]

    def descendants(self, radius_exp: int) -> list["Ball"]:
        """All sub-balls of the given radius exponent, in digit order."""
        if radius_exp <= self.radius_exp:
            return [self]
        level = [self]
        for _ in range(radius_exp - self.radius_exp):
            level = [child for ball in level for child in ball.children()]
        return level

    def sort_key(self) -> tuple[int, Fraction]:
        return (self.radius_exp, self.center.to_fraction())

    def to_json(self) -> dict[str, object]:
        return {"center": str(self.center), "radius_exp": self.radius_exp}

    def __str__(self) -> str:
        return f"B({self.center}, k={self.radius_exp})"


def unit_ball(prime: int) -> Ball:
    """``Z_p``."""
    return Ball(PAdicRational.zero(prime), 0)


def ball_measure(b: Ball) -> Fraction:
    return b.measure


def ball_relation(a: Ball, b: Ball) -> BallRelation:
    """Decide which of the four possible relations holds between two balls."""
    if a.prime != b.prime:
        raise PrimeMismatchError(f"cannot relate {a.prime}-adic and {b.prime}-adic balls")
    if a == b:
        return BallRelation.EQUAL
    if a.radius_exp >= b.radius_exp:
        return BallRelation.SUBSET if b.contains(a.center) else BallRelation.DISJOINT
    return BallRelation.SUPERSET if a.contains(b.center) else BallRelation.DISJOINT


def ball_children(b: Ball) -> list[Ball]:
    return b.children()


def enclosing_ball(balls: Iterable[Ball], points: Iterable[PAdicRational] = ()) -> Ball:
    """Smallest ball containing every given ball and point."""
    balls = list(balls)
    points = list(points)
    anchor = points[0] if points else balls[0].center
    k: int | float = INFINITE_VALUATION
    for ball in balls:
        k = min(k, ball.radius_exp, valuation(ball.center - anchor))
    for point in points:
        k = min(k, valuation(point - anchor))
    if k == INFINITE_VALUATION:
        # a single point and nothing else
        k = 0
    return Ball(anchor, int(k))


def split_around(root: Ball, inner: Sequence[Ball]) -> Iterator[Ball]:
    """
    Partition ``root`` into disjoint balls so that every ball of ``inner``
    (all strictly inside ``root``) is a union of parts.

    Only the ancestors of ``inner`` balls are split; everything else is kept
    as large as possible.
    """
    if not inner:
        yield root
        return
    for child in root.children():
        below = [ball for ball in inner if child.contains_ball(ball) and ball != child]
        if below:
            yield from split_around(child, below)
        else:
            yield child
