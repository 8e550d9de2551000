from fractions import Fraction

import pytest

from padic.balls import Ball
from padic.lcf import PiecewiseConstant, omega
from padic.mock import random_function, random_member
from padic.numbers import PAdicRational
from vladimirov.operator import (
    AlphaParam,
    OperatorContractError,
    apply_spectral,
    brute_force_sphere_sum,
    eigen_residual,
    eigen_sample_points,
    eigenvalue,
    evaluate_direct,
    lemma1_constant_check,
    normalization_constant,
    rescaling_residual,
)
from wavelets.basis import WaveletIndex, index_set, mother_psi, synthesize
from wavelets.expansion import analyze, reconstruct


def q(p, value):
    return PAdicRational.from_fraction(p, Fraction(value))


@pytest.mark.parametrize("alpha, expected", [(1.0, 4 / 3), (2.0, 24 / 7)])
def test_normalization_constant(alpha, expected):
    assert abs(normalization_constant(AlphaParam(alpha, 2)) - expected) < 1e-12


def test_alpha_must_be_positive():
    with pytest.raises(OperatorContractError):
        AlphaParam(0.0, 2)
    with pytest.raises(OperatorContractError):
        AlphaParam(-1.0, 3)


def test_eigenvalue():
    a = AlphaParam(1.0, 2)
    assert eigenvalue(0, a) == pytest.approx(2)
    assert eigenvalue(1, a) == pytest.approx(1)
    assert eigenvalue(-2, AlphaParam(0.5, 3)) == pytest.approx(3**1.5)


def test_mother_wavelet_at_origin():
    a = AlphaParam(1.0, 2)
    assert abs(evaluate_direct(mother_psi(2), q(2, 0), a) - 2) < 1e-12


def test_mother_wavelet_image_vanishes_off_support():
    a = AlphaParam(1.0, 2)
    for x in (Fraction(1, 2), Fraction(3, 4), Fraction(-5, 8)):
        assert abs(evaluate_direct(mother_psi(2), q(2, x), a)) < 1e-12


def test_omega_image():
    a = AlphaParam(1.0, 2)
    for x in (0, 1, 6, -3):
        assert abs(evaluate_direct(omega(2), q(2, x), a) - 2 / 3) < 1e-12
    # outside Z_p the value is -C_α |x|_p^(-1-α)
    assert abs(evaluate_direct(omega(2), q(2, Fraction(1, 2)), a) + 1 / 3) < 1e-12


def test_zero_function_and_prime_mismatch():
    a = AlphaParam(1.0, 3)
    assert evaluate_direct(PiecewiseConstant.zero(3), q(3, 1), a) == 0
    with pytest.raises(OperatorContractError):
        evaluate_direct(omega(2), q(2, 0), a)


@pytest.mark.parametrize(
    "prime, gamma, j, n, alpha",
    [
        (2, 1, 1, Fraction(1, 2), 0.5),
        (2, 0, 1, 0, 1.0),
        (2, -2, 1, Fraction(3, 4), 2.0),
        (3, 0, 2, 0, 1.0),
        (3, 1, 1, Fraction(2, 3), 0.7),
        (5, -1, 3, Fraction(1, 5), 1.3),
    ],
)
def test_wavelets_are_eigenfunctions(prime, gamma, j, n, alpha):
    idx = WaveletIndex.of(prime, gamma, j, n)
    assert eigen_residual(idx, AlphaParam(alpha, prime)) < 1e-9


def test_perturbed_eigenvalue_is_detected():
    idx = WaveletIndex.of(2, 0, 1, 0)
    assert eigen_residual(idx, AlphaParam(1.0, 2), eigenvalue_scale=1.01) > 1e-3


def test_spectral_and_direct_agree(rng):
    a = AlphaParam(1.0, 3)
    idx = WaveletIndex.of(3, 0, 1, Fraction(1, 3))
    e = analyze(synthesize(idx).scale(2 - 1j), 1, 1)
    image = reconstruct(apply_spectral(e, a))
    for _ in range(20):
        x = random_member(rng, Ball(PAdicRational.zero(3), -2), digits=5)
        assert abs(image(x) - evaluate_direct(synthesize(idx).scale(2 - 1j), x, a)) < 1e-9


def test_apply_spectral_scales_coefficients():
    a = AlphaParam(2.0, 2)
    idx = WaveletIndex.of(2, -1, 1, Fraction(1, 2))
    out = apply_spectral(analyze(synthesize(idx), 1, 2), a)
    for other, value in out.coeffs.items():
        expected = 16 if other == idx else 0
        assert abs(value - expected) < 1e-9
    assert out.scaling_coeff == 0


def test_apply_spectral_rejects_scaling_component():
    with pytest.raises(OperatorContractError, match="evaluate_direct"):
        apply_spectral(analyze(omega(2), 1, 0), AlphaParam(1.0, 2))
    with pytest.raises(OperatorContractError):
        apply_spectral(analyze(mother_psi(3), 0, 1), AlphaParam(1.0, 2))


def test_brute_force_matches_closed_form_tail(rng):
    for prime in (2, 3):
        a = AlphaParam(1.5, prime)
        for _ in range(3):
            f = random_function(rng, prime, 1, 1)
            for _ in range(5):
                x = random_member(rng, Ball(PAdicRational.zero(prime), -2), digits=4)
                direct = evaluate_direct(f, x, a)
                brute = brute_force_sphere_sum(f, x, a, depth=60)
                assert abs(direct - brute) < 1e-9


def test_eigenvalue_series():
    check = lemma1_constant_check(AlphaParam(1.0, 2), depth=30)
    assert check.target == pytest.approx(2)
    assert check.within_bound
    assert check.error < 1e-8
    deep = lemma1_constant_check(AlphaParam(0.5, 5), depth=80)
    assert deep.error < 1e-12
    with pytest.raises(OperatorContractError):
        lemma1_constant_check(AlphaParam(1.0, 2), depth=0)


def test_rescaled_mother_wavelet(rng):
    a = AlphaParam(1.0, 2)
    region = Ball(PAdicRational.zero(2), -4)
    for scale, shift in [(PAdicRational.power(2, 1), q(2, Fraction(1, 4))), (-PAdicRational.power(2, -2), q(2, 3))]:
        pieces = mother_psi(2).affine_pullback(scale, shift).balls()
        points = [ball.center for ball in pieces] + [random_member(rng, region, digits=8) for _ in range(20)]
        assert rescaling_residual(scale, shift, a, points) < 1e-9


@pytest.mark.parametrize("prime", [2, 3, 5])
@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
def test_mother_wavelet_eigenvalue_grid(prime, alpha):
    idx = WaveletIndex.of(prime, 0, 1, 0)
    points = eigen_sample_points(idx, outside=5)
    assert sum(1 for x in points if not idx.support.contains(x)) == 5
    assert eigen_residual(idx, AlphaParam(alpha, prime), points) < 1e-9


@pytest.mark.parametrize("prime", [2, 3])
@pytest.mark.parametrize("alpha", [0.5, 1.0])
def test_every_basis_function_of_small_window_is_an_eigenfunction(prime, alpha):
    a = AlphaParam(alpha, prime)
    indices = index_set(1, 1, prime)
    assert {idx.j for idx in indices} == set(range(1, prime))
    assert max(eigen_residual(idx, a) for idx in indices) < 1e-9


@pytest.mark.parametrize("prime", [2, 3, 5])
@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
def test_eigenvalue_series_grid(prime, alpha):
    check = lemma1_constant_check(AlphaParam(alpha, prime), depth=30)
    # floating-point rounding of the partial sum sits on top of the truncation bound
    assert check.error <= check.bound + 1e-12 * check.target
