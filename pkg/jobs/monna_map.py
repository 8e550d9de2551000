"""
Job to tabulate the Monna map on points and balls.

All images are written as exact fractions; ``rho_float`` is for plotting.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Sequence

from monna import ball_image_of, rho
from padic.balls import Ball
from padic.numbers import PAdicFormatError, parse_padic
from wavelets.basis import window_ball

from ._files import SchemaError, write_rows

POINTS_FILE = "monna_points.csv"
BALLS_FILE = "monna_balls.csv"


def parse_ball(text: str, prime: int) -> Ball:
    """``"center:radius_exp"``, e.g. ``"3/2^2:1"``."""
    center, sep, radius = text.rpartition(":")
    if not sep:
        raise SchemaError(f"ball {text!r} must be written 'center:radius_exp'")
    try:
        return Ball(parse_padic(center, prime), int(radius))
    except (PAdicFormatError, ValueError) as exc:
        raise SchemaError(f"cannot parse ball {text!r}: {exc}") from exc


def run(
    *,
    manager: Any,
    points: Sequence[str] = (),
    balls: Sequence[str] = (),
    output_dir: str | None = None,
) -> dict[str, Any]:
    """
    Without points or balls, tabulates every ball of the resolution ``p**(-M)``
    inside the window.
    """
    config = manager.config
    out = Path(output_dir) if output_dir else config.output_dir
    try:
        xs = [parse_padic(text, config.prime) for text in points]
    except PAdicFormatError as exc:
        raise SchemaError(str(exc)) from exc
    targets = [parse_ball(text, config.prime) for text in balls]
    if not xs and not targets:
        targets = window_ball(config.prime, config.V).descendants(config.M)

    row_count = 0
    if xs:
        rows = []
        for x in xs:
            image = rho(x)
            rows.append({"x": str(x), "rho": str(image), "rho_float": f"{float(image):.17g}"})
        row_count += write_rows(rows, ["x", "rho", "rho_float"], out / POINTS_FILE)
    if targets:
        rows = []
        for ball in targets:
            image = ball_image_of(ball)
            rows.append(
                {
                    "center": str(ball.center),
                    "radius_exp": ball.radius_exp,
                    "measure": str(ball.measure),
                    "left": str(image.left),
                    "right": str(image.right),
                    "length": str(image.length),
                }
            )
        row_count += write_rows(rows, ["center", "radius_exp", "measure", "left", "right", "length"], out / BALLS_FILE)
    manager.logger.info("Tabulated ρ on %d points and %d balls", len(xs), len(targets))
    return {"row_count": row_count, "points": len(xs), "balls": len(targets)}
