"""
Property suites run by the verify job.

Each suite takes the run configuration, its own random generator and the
eigenvalue perturbation (``None`` outside negative-control runs) and returns
a :class:`PropertyResult`. Suites are independent and safe to run in
parallel.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Callable

import numpy as np

from haar_bridge.bridge import (
    HAAR_PRIME,
    commutation_residual,
    shift_identity_residual,
    spectral_consistency_residual,
    theorem7_residual,
    unitarity_residual,
)
from haar_bridge.mock import random_step_function
from manager.config import RunConfig
from monna import ball_image_of, holder_gap, image_partition_check, rho, rho_nat_inverse
from padic.balls import Ball
from padic.lcf import omega
from padic.mock import random_function, random_member, random_padic
from padic.numbers import PAdicRational
from vladimirov.operator import (
    AlphaParam,
    apply_spectral,
    brute_force_sphere_sum,
    eigen_residual,
    eigen_sample_points,
    evaluate_direct,
    lemma1_constant_check,
    rescaling_residual,
)
from wavelets.basis import (
    WaveletIndex,
    gram_matrix,
    index_set,
    mother_psi,
    omega_parseval_partial_sum,
    window_ball,
)
from wavelets.expansion import WaveletExpansion, parseval_defect, reconstruct

GRAM_MAX_SIZE = 128


@dataclass
class PropertyResult:
    name: str
    passed: bool
    residual: float
    tolerance: float
    checked: int
    skipped: bool = False
    detail: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return asdict(self)


def _skipped(name: str, reason: str) -> PropertyResult:
    return PropertyResult(name, True, 0.0, 0.0, 0, skipped=True, detail={"reason": reason})


def _alpha(config: RunConfig) -> AlphaParam:
    return AlphaParam(config.alpha, config.prime)


# ------------------------------------------------------------------ operator
def check_mother_eigenvalue(config: RunConfig, rng: np.random.Generator, perturb: float | None) -> PropertyResult:
    """``D^α ψ = p**α ψ`` at every piece of ψ and five points outside Z_p."""
    idx = WaveletIndex.of(config.prime, 0, 1, 0)
    points = eigen_sample_points(idx, outside=5)
    residual = eigen_residual(idx, _alpha(config), points, eigenvalue_scale=perturb or 1.0)
    tol = config.tolerance("operator")
    return PropertyResult("mother_eigenvalue", residual <= tol, residual, tol, len(points))


def check_basis_eigenvalues(config: RunConfig, rng: np.random.Generator, perturb: float | None) -> PropertyResult:
    """Every ψ of ``index_set(1, 1)`` is an eigenfunction, all j included."""
    a = _alpha(config)
    worst, worst_index = 0.0, None
    indices = index_set(1, 1, config.prime)
    for position, idx in enumerate(indices):
        scale = perturb if (perturb is not None and position == 0) else 1.0
        residual = eigen_residual(idx, a, eigenvalue_scale=scale)
        if residual > worst:
            worst, worst_index = residual, str(idx)
    tol = config.tolerance("operator")
    return PropertyResult(
        "basis_eigenvalues", worst <= tol, worst, tol, len(indices), detail={"worst_index": worst_index}
    )


def check_eigenvalue_series(config: RunConfig, rng: np.random.Generator, perturb: float | None) -> PropertyResult:
    check = lemma1_constant_check(_alpha(config), 30)
    # truncation bound plus rounding of the partial sum
    tol = check.bound + config.tolerance("value") * max(1.0, check.target)
    return PropertyResult(
        "eigenvalue_series",
        check.error <= tol,
        check.error,
        tol,
        30,
        detail={"value": check.value, "target": check.target},
    )


def check_rescaling(config: RunConfig, rng: np.random.Generator, perturb: float | None) -> PropertyResult:
    """``D^α ψ(ax+b) = |a|_p**α p**α ψ(ax+b)`` for ``a = ±p**s``."""
    p = config.prime
    a = _alpha(config)
    worst, checked = 0.0, 0
    for _ in range(10):
        s = int(rng.integers(-2, 3))
        scale = PAdicRational.power(p, s) * (1 if rng.random() < 0.5 else -1)
        shift = random_padic(rng, p, (-2, 2), zero_rate=0.2)
        g = mother_psi(p).affine_pullback(scale, shift)
        points = [ball.center for ball in g.balls()]
        points += [random_padic(rng, p, (-4, 4)) for _ in range(3)]
        worst = max(worst, rescaling_residual(scale, shift, a, points))
        checked += len(points)
    tol = config.tolerance("operator")
    return PropertyResult("rescaling", worst <= tol, worst, tol, checked)


def check_spectral_direct(config: RunConfig, rng: np.random.Generator, perturb: float | None) -> PropertyResult:
    """``reconstruct(apply_spectral(e))`` against ``evaluate_direct`` on random zero-mean expansions."""
    p, V, M = config.prime, config.V, config.M
    a = _alpha(config)
    indices = index_set(V, M, p)
    if not indices:
        return _skipped("spectral_direct", f"window V={V}, M={M} holds no wavelets")
    region = window_ball(p, V + 1)
    worst, checked = 0.0, 0
    for _ in range(config.verify["random_functions"]):
        chosen = rng.choice(len(indices), size=min(6, len(indices)), replace=False)
        coeffs = {indices[int(i)]: complex(rng.normal(), rng.normal()) for i in chosen}
        e = WaveletExpansion(p, V, M, 0j, coeffs)
        f = reconstruct(e)
        image = reconstruct(apply_spectral(e, a))
        for _ in range(config.verify["direct_points"]):
            x = random_member(rng, region, digits=V + M + 3)
            worst = max(worst, abs(image.evaluate(x) - evaluate_direct(f, x, a)))
            checked += 1
    tol = config.tolerance("operator")
    return PropertyResult("spectral_direct", worst <= tol, worst, tol, checked)


def check_tail_validation(config: RunConfig, rng: np.random.Generator, perturb: float | None) -> PropertyResult:
    """
    Closed-form tail against the sphere-by-sphere sum. α is drawn from
    ``[1, 3]`` so that the truncated sum converges below the tolerance.
    """
    p = config.prime
    depth = config.verify["sphere_depth"]
    worst, checked = 0.0, 0
    while checked < config.verify["tail_instances"]:
        f = random_function(rng, p, 1, 1)
        if not f.pieces:
            continue
        x = random_padic(rng, p, (-3, 3), zero_rate=0.1)
        a = AlphaParam(float(rng.uniform(1.0, 3.0)), p)
        worst = max(worst, abs(evaluate_direct(f, x, a) - brute_force_sphere_sum(f, x, a, depth)))
        checked += 1
    tol = config.tolerance("operator")
    return PropertyResult("tail_validation", worst <= tol, worst, tol, checked, detail={"depth": depth})


# ------------------------------------------------------------------- basis
def _gram_window(config: RunConfig) -> tuple[int, int]:
    V, M = config.window
    while config.prime ** (V + M) > GRAM_MAX_SIZE and V + M > 0:
        if V >= M:
            V -= 1
        else:
            M -= 1
    return V, M


def check_orthonormality(config: RunConfig, rng: np.random.Generator, perturb: float | None) -> PropertyResult:
    V, M = _gram_window(config)
    gram = gram_matrix(V, M, config.prime)
    residual = float(np.max(np.abs(gram - np.eye(len(gram)))))
    tol = config.tolerance("gram")
    return PropertyResult("orthonormality", residual <= tol, residual, tol, len(gram), detail={"window": [V, M]})


def check_omega_parseval(config: RunConfig, rng: np.random.Generator, perturb: float | None) -> PropertyResult:
    p = config.prime
    exact = all(omega_parseval_partial_sum(p, G) == 1 - Fraction(1, p**G) for G in range(1, 21))
    defect = parseval_defect(omega(p), 3, 0)
    tol = config.tolerance("value")
    return PropertyResult(
        "omega_parseval", exact and defect <= tol, defect, tol, 21, detail={"partial_sums_exact": exact}
    )


# ------------------------------------------------------------------- monna
def check_monna_holder(config: RunConfig, rng: np.random.Generator, perturb: float | None) -> PropertyResult:
    """``|ρ(x) - ρ(y)| <= |x - y|_p`` on random pairs; equality must be attained."""
    p = config.prime
    pairs = [(PAdicRational.zero(p), -PAdicRational.power(p, v)) for v in range(-4, 5)]
    for _ in range(config.verify["holder_pairs"]):
        pairs.append((random_padic(rng, p, (-4, 4), zero_rate=0.05), random_padic(rng, p, (-4, 4), zero_rate=0.05)))
    worst = Fraction(0)
    violations = witnesses = 0
    for x, y in pairs:
        gap, bound = holder_gap(x, y)
        if gap > bound:
            violations += 1
            worst = max(worst, gap - bound)
        elif gap == bound and bound > 0:
            witnesses += 1
    return PropertyResult(
        "monna_holder",
        violations == 0 and witnesses > 0,
        float(worst),
        0.0,
        len(pairs),
        detail={"violations": violations, "equality_witnesses": witnesses},
    )


def check_monna_ball_images(config: RunConfig, rng: np.random.Generator, perturb: float | None) -> PropertyResult:
    """Ball images: exact lengths, zero overlap for disjoint balls, members inside."""
    p = config.prime
    outer = window_ball(p, 2)
    balls: list[Ball] = [ball for k in range(-2, 3) for ball in outer.descendants(k)]
    length_mismatches = sum(1 for ball in balls if ball_image_of(ball).length != ball.measure)
    pairs, overlap = image_partition_check(balls)
    outside = 0
    members = config.verify["ball_members"]
    for _ in range(members):
        ball = balls[int(rng.integers(0, len(balls)))]
        if not ball_image_of(ball).contains_closed(rho(random_member(rng, ball))):
            outside += 1
    return PropertyResult(
        "monna_ball_images",
        length_mismatches == 0 and overlap == 0 and outside == 0,
        float(overlap),
        0.0,
        len(balls) + pairs + members,
        detail={"length_mismatches": length_mismatches, "disjoint_pairs": pairs, "members_outside": outside},
    )


# ------------------------------------------------------------------- bridge
def check_haar_correspondence(config: RunConfig, rng: np.random.Generator, perturb: float | None) -> PropertyResult:
    """Pullback of every Haar wavelet, then the coefficient diagram on random step functions."""
    if config.prime != HAAR_PRIME:
        return _skipped("haar_correspondence", "the Haar bridge exists for p=2 only")
    basis_worst = max(
        theorem7_residual(gamma, rho_nat_inverse(N, HAAR_PRIME)) for gamma in range(-2, 3) for N in range(16)
    )
    diagram_worst = 0.0
    for _ in range(config.verify["random_functions"]):
        K, M = int(rng.integers(0, 4)), int(rng.integers(0, 4))
        diagram_worst = max(diagram_worst, commutation_residual(random_step_function(rng, K, M)))
    passed = basis_worst <= config.tolerance("value") and diagram_worst <= config.tolerance("parseval")
    return PropertyResult(
        "haar_correspondence",
        passed,
        max(basis_worst, diagram_worst),
        config.tolerance("parseval"),
        80 + config.verify["random_functions"],
        detail={"basis_residual": basis_worst, "diagram_residual": diagram_worst},
    )


def _shift_points(rng: np.random.Generator, gamma: int, n: PAdicRational, count: int) -> list[PAdicRational]:
    points = []
    for i in range(count):
        if i % 2:
            points.append(random_padic(rng, HAAR_PRIME, (-4, 4)))
        else:
            z = int(rng.integers(-64, 64))
            points.append((n + z).shift(-gamma))
    return points


def check_bridge_identities(config: RunConfig, rng: np.random.Generator, perturb: float | None) -> PropertyResult:
    """Unitarity of the pullback and the two shift identities."""
    if config.prime != HAAR_PRIME:
        return _skipped("bridge_identities", "the Haar bridge exists for p=2 only")
    unitarity = 0.0
    for _ in range(config.verify["random_functions"]):
        K, M = int(rng.integers(0, 4)), int(rng.integers(0, 4))
        f, g = random_step_function(rng, K, M), random_step_function(rng, K, M)
        unitarity = max(unitarity, unitarity_residual(f, g))
    checked = mismatches = 0
    for gamma in range(-2, 3):
        for N in range(8):
            n = rho_nat_inverse(N, HAAR_PRIME)
            points = _shift_points(rng, gamma, n, config.verify["shift_points"])
            for half in (False, True):
                c, m = shift_identity_residual(gamma, n, points, half=half)
                checked += c
                mismatches += m
    tol = config.tolerance("value")
    return PropertyResult(
        "bridge_identities",
        unitarity <= tol and mismatches == 0 and checked > 0,
        unitarity,
        tol,
        checked,
        detail={"shift_mismatches": mismatches},
    )


def check_real_spectral(config: RunConfig, rng: np.random.Generator, perturb: float | None) -> PropertyResult:
    """Haar multipliers ``2**(α(1-γ))`` against the conjugated operator on the half-line."""
    if config.prime != HAAR_PRIME:
        return _skipped("real_spectral", "the Haar bridge exists for p=2 only")
    worst, checked = 0.0, 0
    for _ in range(5):
        K, M = int(rng.integers(0, 3)), int(rng.integers(0, 3))
        if K + M == 0:
            M = 1
        f = random_step_function(rng, K, M, zero_mean=True)
        points = [Fraction(j, 2**M) for j in range(2 ** (K + M))]
        points += [Fraction(2**K), Fraction(2 ** (K + 1) + 1), Fraction(1, 3)]
        worst = max(worst, spectral_consistency_residual(f, config.alpha, points))
        checked += len(points)
    tol = config.tolerance("operator")
    return PropertyResult("real_spectral", worst <= tol, worst, tol, checked)


PropertyCheck = Callable[[RunConfig, np.random.Generator, "float | None"], PropertyResult]

PROPERTY_REGISTRY: dict[str, PropertyCheck] = {
    "mother_eigenvalue": check_mother_eigenvalue,
    "eigenvalue_series": check_eigenvalue_series,
    "orthonormality": check_orthonormality,
    "basis_eigenvalues": check_basis_eigenvalues,
    "omega_parseval": check_omega_parseval,
    "monna_holder": check_monna_holder,
    "monna_ball_images": check_monna_ball_images,
    "haar_correspondence": check_haar_correspondence,
    "bridge_identities": check_bridge_identities,
    "spectral_direct": check_spectral_direct,
    "tail_validation": check_tail_validation,
    "real_spectral": check_real_spectral,
    "rescaling": check_rescaling,
}

__all__ = ["PROPERTY_REGISTRY", "PropertyResult"]
