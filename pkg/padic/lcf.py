"""
Compactly supported locally constant functions ``Q_p -> C``.

A :class:`PiecewiseConstant` is a finite family of pairwise disjoint balls
with one complex value each, and zero elsewhere. Every operation keeps the
normal form: no zero-valued pieces, and no complete family of ``p`` sibling
balls sharing the same value (those are merged into their parent).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Sequence

from .balls import Ball, BallRelation, ball_relation, split_around, unit_ball
from .numbers import PAdicRational, PrimeMismatchError, character, parse_padic, valuation

__all__ = [
    "OverlappingPiecesError",
    "PiecewiseConstant",
    "common_refinement",
    "indicator",
    "inner_product",
    "linear_combine",
    "omega",
    "refine",
]

Piece = tuple[Ball, complex]


class OverlappingPiecesError(ValueError):
    """Raised when the pieces handed to a PiecewiseConstant intersect."""


def _normal_form(pieces: Iterable[Piece]) -> tuple[Piece, ...]:
    current = {ball: complex(value) for ball, value in pieces if value != 0}
    if not current:
        return ()
    prime = next(iter(current)).prime
    merged = True
    while merged:
        merged = False
        families: dict[Ball, list[Ball]] = defaultdict(list)
        for ball in current:
            families[ball.parent()].append(ball)
        for parent, members in families.items():
            if len(members) != prime:
                continue
            values = {current[ball] for ball in members}
            if len(values) == 1:
                for ball in members:
                    del current[ball]
                current[parent] = values.pop()
                merged = True
    return tuple(sorted(current.items(), key=lambda item: item[0].sort_key()))


@dataclass(frozen=True)
class PiecewiseConstant:
    prime: int
    pieces: tuple[Piece, ...] = ()

    @classmethod
    def from_pieces(cls, prime: int, pieces: Iterable[Piece]) -> "PiecewiseConstant":
        """
        Build a function from arbitrary ``(ball, value)`` pairs.

        Raises
        ------
        OverlappingPiecesError
            If two balls intersect.
        PrimeMismatchError
            If a ball is not ``prime``-adic.
        """
        pieces = list(pieces)
        for ball, _ in pieces:
            if ball.prime != prime:
                raise PrimeMismatchError(f"{ball} is not {prime}-adic")
        for i, (a, _) in enumerate(pieces):
            for b, _ in pieces[i + 1 :]:
                if ball_relation(a, b) is not BallRelation.DISJOINT:
                    raise OverlappingPiecesError(f"pieces {a} and {b} intersect")
        return cls._trusted(prime, pieces)

    @classmethod
    def _trusted(cls, prime: int, pieces: Iterable[Piece]) -> "PiecewiseConstant":
        return cls(prime, _normal_form(pieces))

    @classmethod
    def zero(cls, prime: int) -> "PiecewiseConstant":
        return cls(prime, ())

    # ----------------------------------------------------------------- values
    def evaluate(self, x: PAdicRational) -> complex:
        for ball, value in self.pieces:
            if ball.contains(x):
                return value
        return 0j

    __call__ = evaluate

    def value_on(self, ball: Ball) -> complex:
        """Value on a ball that lies inside one piece or outside all of them."""
        for piece, value in self.pieces:
            if piece.contains_ball(ball):
                return value
        return 0j

    def balls(self) -> list[Ball]:
        return [ball for ball, _ in self.pieces]

    def norm_squared(self) -> float:
        return float(sum(abs(value) ** 2 * float(ball.measure) for ball, value in self.pieces))

    def integral(self) -> complex:
        return complex(sum(value * float(ball.measure) for ball, value in self.pieces))

    def integral_over(self, region: Ball) -> complex:
        """Exact-weight integral of the function over one ball."""
        total = 0j
        for ball, value in self.pieces:
            relation = ball_relation(ball, region)
            if relation in (BallRelation.SUBSET, BallRelation.EQUAL):
                total += value * float(ball.measure)
            elif relation is BallRelation.SUPERSET:
                total += value * float(region.measure)
        return total

    # ------------------------------------------------------------- operations
    def scale(self, c: complex) -> "PiecewiseConstant":
        return PiecewiseConstant._trusted(self.prime, ((ball, c * value) for ball, value in self.pieces))

    def __add__(self, other: "PiecewiseConstant") -> "PiecewiseConstant":
        return linear_combine([(1, self), (1, other)])

    def __sub__(self, other: "PiecewiseConstant") -> "PiecewiseConstant":
        return linear_combine([(1, self), (-1, other)])

    def __neg__(self) -> "PiecewiseConstant":
        return self.scale(-1)

    def modulate(self, a: PAdicRational) -> "PiecewiseConstant":
        """
        Multiply by the character ``x -> χ(a x)``.

        ``χ(a x)`` is constant on a ball of radius ``p**(-k)`` iff
        ``|a|_p p**(-k) <= 1``, so pieces coarser than that are split first.
        """
        if a.is_zero():
            return self
        finest = -int(valuation(a))
        out: list[Piece] = []
        for ball, value in self.pieces:
            for part in ball.descendants(finest):
                out.append((part, value * character(a * part.center)))
        return PiecewiseConstant._trusted(self.prime, out)

    def affine_pullback(self, a: PAdicRational, b: PAdicRational) -> "PiecewiseConstant":
        """
        Return ``x -> f(a x + b)`` for a unit ``a = ±p**s`` of Z[1/p].

        The preimage of ``B(c, k)`` is ``B((c - b) / a, k - v(a))``.
        """
        if a.is_zero():
            raise ValueError("the dilation factor must be nonzero")
        s = int(valuation(a))
        if abs(a.mantissa) != self.prime ** max(s, 0):
            raise ValueError(f"{a} is not a unit of Z[1/{self.prime}]")
        sign = 1 if a.mantissa > 0 else -1
        inverse = PAdicRational.power(self.prime, -s) * sign
        out = [
            (Ball((ball.center - b) * inverse, ball.radius_exp - s), value)
            for ball, value in self.pieces
        ]
        return PiecewiseConstant._trusted(self.prime, out)

    def max_abs_difference(self, other: "PiecewiseConstant") -> float:
        """Largest pointwise ``|f - g|`` over the common refinement."""
        rows = common_refinement(self, other)
        return max((abs(u - v) for _, u, v in rows), default=0.0)

    # -------------------------------------------------------------------- I/O
    def to_json(self) -> dict[str, Any]:
        return {
            "prime": self.prime,
            "pieces": [
                {
                    "center": str(ball.center),
                    "radius_exp": ball.radius_exp,
                    "value": [value.real, value.imag],
                }
                for ball, value in self.pieces
            ],
        }

    @classmethod
    def from_json(cls, payload: Mapping[str, Any]) -> "PiecewiseConstant":
        """
        Inverse of :meth:`to_json`.

        Raises
        ------
        KeyError, TypeError, ValueError
            On schema violations; callers wrap these into their own error.
        """
        prime = int(payload["prime"])
        pieces = []
        for entry in payload["pieces"]:
            re_part, im_part = entry["value"]
            ball = Ball(parse_padic(entry["center"], prime), int(entry["radius_exp"]))
            pieces.append((ball, complex(float(re_part), float(im_part))))
        return cls.from_pieces(prime, pieces)


def indicator(ball: Ball) -> PiecewiseConstant:
    return PiecewiseConstant._trusted(ball.prime, [(ball, 1 + 0j)])


def omega(prime: int) -> PiecewiseConstant:
    """Indicator Ω of ``Z_p``."""
    return indicator(unit_ball(prime))


def _check_primes(functions: Sequence[PiecewiseConstant]) -> int:
    primes = {f.prime for f in functions}
    if len(primes) != 1:
        raise PrimeMismatchError(f"functions over different primes: {sorted(primes)}")
    return primes.pop()


def refine(*functions: PiecewiseConstant) -> list[tuple[Ball, tuple[complex, ...]]]:
    """
    Common partition of the union of supports on which every function is
    constant, paired with the value of each function on every part.
    """
    _check_primes(functions)
    unique = sorted({ball for f in functions for ball in f.balls()}, key=Ball.sort_key)
    roots: list[tuple[Ball, list[Ball]]] = []
    for ball in unique:
        for root, inner in roots:
            if root.contains_ball(ball):
                inner.append(ball)
                break
        else:
            roots.append((ball, []))
    rows = []
    for root, inner in roots:
        for part in split_around(root, inner):
            rows.append((part, tuple(f.value_on(part) for f in functions)))
    return rows


def common_refinement(f: PiecewiseConstant, g: PiecewiseConstant) -> list[tuple[Ball, complex, complex]]:
    return [(ball, u, v) for ball, (u, v) in refine(f, g)]


def inner_product(f: PiecewiseConstant, g: PiecewiseConstant) -> complex:
    """
    ``<f, g> = ∫ f(x) conj(g(x)) dμ(x)``.

    Pieces of one function are disjoint, so the common refinement reduces to
    the pairwise intersections, each of which is the smaller of two nested
    balls.
    """
    _check_primes((f, g))
    total = 0j
    for a, u in f.pieces:
        for b, v in g.pieces:
            relation = ball_relation(a, b)
            if relation is BallRelation.DISJOINT:
                continue
            smaller = b if relation is BallRelation.SUPERSET else a
            total += u * v.conjugate() * float(smaller.measure)
    return total


def linear_combine(terms: Sequence[tuple[complex, PiecewiseConstant]]) -> PiecewiseConstant:
    """``Σ c_i f_i`` evaluated over the common refinement of all ``f_i``."""
    if not terms:
        raise ValueError("linear_combine needs at least one term")
    coeffs = [complex(c) for c, _ in terms]
    functions = [f for _, f in terms]
    prime = _check_primes(functions)
    rows = refine(*functions)
    out = [(ball, sum((c * v for c, v in zip(coeffs, values)), 0j)) for ball, values in rows]
    return PiecewiseConstant._trusted(prime, out)
