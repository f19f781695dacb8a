import math

import numpy as np
import pytest

from momentforge import (AtomicMeasure, DomainError, UnsupportedError,
                         affine, kappa_of, linear, log_moment_via_rep,
                         mobius, power_moments, powertower, psi, qratio,
                         ratio, sigma_of)
from momentforge.bernstein import lk_log_moment, lk_rep_of
from momentforge.errors import PreconditionError
from momentforge.measures import DensityMeasure
from momentforge.quadrature import integrate, integrate_exp_decay

CATALOG = [
    affine(1.0),
    affine(2.0),
    ratio(1.0, 2.0),
    ratio(0.5, 3.0),
    qratio(0.5, 0.25, 0.5),
    linear(),
]

AB_PAIRS = [(0.0, 1.0), (1.0, 1.0), (0.5, 2.0)]


def admissible(f, alpha):
    return f(alpha) > 0.0


@pytest.mark.parametrize("s", [0.1, 1.0, 10.0])
def test_affine_closed_form(s):
    assert affine(1.5)(s) == pytest.approx(1.5 + s)


def test_ratio_closed_form():
    f = ratio(1.0, 2.0)
    assert f(1.0) == pytest.approx(2.0 / 3.0)
    assert f(0.0) == pytest.approx(0.5)


def test_ratio_requires_order():
    with pytest.raises(DomainError):
        ratio(2.0, 1.0)


def test_mobius_values():
    f = mobius()
    assert f(1.0) == pytest.approx(0.5)
    assert f(0.0) == 0.0


def test_qratio_closed_form():
    f = qratio(0.5, 0.25, 0.5)
    # (1 - a q^s) / (1 - b q^s) at s = 1
    assert f(1.0) == pytest.approx((1 - 0.25) / (1 - 0.125))


def test_powertower_closed_form():
    f = powertower()
    assert f(1.0) == pytest.approx(4.0)
    assert f(2.0) == pytest.approx(2.0 * 1.5 ** 3)


def test_levy_representation_matches_closed_form():
    # a + b s + int (1 - e^{-sx}) dnu reproduces f on a spot grid
    for f in (ratio(1.0, 2.0), mobius()):
        for s in (0.25, 1.0, 4.0):
            nu = f.levy
            val, _ = integrate_exp_decay(
                lambda x, s=s: (-np.expm1(-s * x)) * nu.density(x),
                tol=1e-12)
            assert f.a + f.b * s + val == pytest.approx(f(s), abs=1e-10)


def test_kappa_affine_is_exponential_density():
    kappa = kappa_of(affine(2.0))
    assert isinstance(kappa, DensityMeasure)
    assert kappa.density(1.0) == pytest.approx(math.exp(-2.0))


def test_kappa_qratio_is_atomic():
    kappa = kappa_of(qratio(0.5, 0.25, 0.5))
    assert isinstance(kappa, AtomicMeasure)
    log2 = math.log(2.0)
    assert kappa.atoms[0][0] == pytest.approx(log2)
    assert kappa.atoms[0][1] == pytest.approx((0.5 - 0.25) * log2)


def test_kappa_powertower_unsupported():
    with pytest.raises(UnsupportedError):
        kappa_of(powertower())


def test_kappa_is_laplace_transform_of_log_derivative():
    # f'/f (s) = int e^{-sx} dkappa(x)
    f = ratio(1.0, 2.0)
    kappa = kappa_of(f)
    for s in (0.5, 1.0, 2.0):
        lhs = f.deriv(s) / f(s)
        val, _ = integrate_exp_decay(
            lambda x, s=s: np.exp(-s * x) * kappa.density(x), tol=1e-12)
        assert lhs == pytest.approx(val, abs=1e-10)


def test_power_moments_telescopes_for_powertower():
    seq = power_moments(powertower(), 1.0, 1.0)
    for n in range(1, 6):
        assert seq(n) == pytest.approx(float((n + 1) ** (n + 1)), rel=1e-13)


def test_power_moments_affine_is_pochhammer():
    seq = power_moments(affine(1.5), 1.0, 1.0)
    for n in range(6):
        expected = math.gamma(2.5 + n) / math.gamma(2.5)
        assert seq(n) == pytest.approx(expected, rel=1e-13)


def test_power_moments_needs_positive_start():
    with pytest.raises(PreconditionError):
        power_moments(linear(), 0.0, 1.0)


@pytest.mark.parametrize("f", CATALOG, ids=lambda f: f.catalog_id)
def test_representation_identity(f):
    for alpha, beta in AB_PAIRS:
        if not admissible(f, alpha):
            continue
        seq = power_moments(f, alpha, beta)
        for n in (0, 1, 2, 5, 10, 15):
            rep = log_moment_via_rep(f, alpha, beta, n)
            assert rep == pytest.approx(seq.log(n), abs=1e-7)


@pytest.mark.parametrize("f", CATALOG, ids=lambda f: f.catalog_id)
def test_psi_at_integers(f):
    for alpha, beta in AB_PAIRS:
        if not admissible(f, alpha):
            continue
        seq = power_moments(f, alpha, beta)
        for n in (0, 1, 2, 7, 15):
            assert psi(f, alpha, beta, float(n)) == pytest.approx(
                -seq.log(n), abs=1e-7)


def test_psi_normalizations_exact():
    f = ratio(1.0, 2.0)
    assert abs(psi(f, 1.0, 1.0, 0.0)) < 1e-12
    assert psi(f, 1.0, 1.0, 1.0) == pytest.approx(-math.log(f(1.0)),
                                                  abs=1e-12)


def test_psi_between_integers_is_finite_and_concaveish():
    f = affine(1.0)
    values = [psi(f, 1.0, 1.0, z) for z in (0.5, 1.5, 2.5)]
    assert all(math.isfinite(v) for v in values)


def test_sigma_qratio_is_atomic_probability_like():
    f = qratio(0.5, 0.25, 0.5)
    sigma = sigma_of(f, 1.0, 1.0)
    assert isinstance(sigma, AtomicMeasure)
    assert all(0.0 < loc < 1.0 for loc, _ in sigma.atoms)
    assert all(wt > 0 for _, wt in sigma.atoms)


def test_sigma_density_moment_condition():
    # total sigma mass may diverge near 1, but int (1 - u)^2 dsigma must
    # be finite for the representation integral to converge
    f = affine(1.0)
    sigma = sigma_of(f, 1.0, 1.0)
    val, _ = integrate(lambda u: (1.0 - u) ** 2 * sigma.density(u),
                       0.0, 1.0, tol=1e-9)
    assert math.isfinite(val) and val > 0


def test_sigma_alpha_zero_requires_positive_f0():
    with pytest.raises(Exception):
        sigma_of(linear(), 0.0, 1.0)


def test_lk_log_moment_matches_rep():
    f = affine(1.0)
    rep = lk_rep_of(f, 1.0, 1.0)
    seq = power_moments(f, 1.0, 1.0)
    for n in (2, 5):
        assert lk_log_moment(rep, n) == pytest.approx(seq.log(n), abs=1e-8)


def test_self_test_rejects_bad_levy_density():
    # constructing ratio with b < a flips the sign of the levy density
    with pytest.raises(DomainError):
        ratio(3.0, 0.5)
