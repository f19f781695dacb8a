import math

import pytest

from momentforge import (BetaFamily, DomainError, GammaFamily,
                         LogNormalQFamily, MomentSequence, UnsupportedError,
                         beta_density, beta_mellin, gamma_density,
                         gamma_mellin, moment, t_transform, vc_density,
                         vc_mellin)


def test_gamma_mellin_at_integers_is_pochhammer():
    fam = GammaFamily(1.5, 1.0)
    for n in range(6):
        expected = math.gamma(1.5 + n) / math.gamma(1.5)
        assert gamma_mellin(fam, n).real == pytest.approx(expected,
                                                          rel=1e-13)


def test_gamma_mellin_power():
    fam = GammaFamily(1.0, 2.0)
    # (Gamma(1+3)/Gamma(1))^2 = 36
    assert gamma_mellin(fam, 3.0).real == pytest.approx(36.0, rel=1e-13)


def test_gamma_density_moments_match_mellin():
    fam = GammaFamily(2.5, 1.0)
    dens = gamma_density(fam)
    for n in range(5):
        assert moment(dens, n).value == pytest.approx(
            gamma_mellin(fam, n).real, rel=1e-10)


def test_gamma_density_needs_c_one():
    with pytest.raises(UnsupportedError):
        gamma_density(GammaFamily(1.0, 2.0))


def test_gamma_mellin_strip():
    with pytest.raises(DomainError):
        gamma_mellin(GammaFamily(1.0, 1.0), -1.5)


def test_beta_moments_are_pochhammer_ratio():
    fam = BetaFamily(1.0, 2.5, 1.0)
    dens = beta_density(fam)
    for n in range(5):
        expected = (math.gamma(1.0 + n) / math.gamma(1.0)
                    * math.gamma(2.5) / math.gamma(2.5 + n))
        assert moment(dens, n).value == pytest.approx(expected, rel=1e-10)
        assert beta_mellin(fam, n).real == pytest.approx(expected,
                                                         rel=1e-12)


def test_beta_needs_ordered_params():
    with pytest.raises(DomainError):
        BetaFamily(2.0, 1.0, 1.0)


def test_mellin_factorization():
    # gamma_b mellin times beta(a,b) mellin equals gamma_a mellin
    a, b = 1.0, 2.0
    for z in (0.5, 1.0, 2.0 + 1.0j):
        lhs = (gamma_mellin(GammaFamily(b, 1.0), z)
               * beta_mellin(BetaFamily(a, b, 1.0), z))
        rhs = gamma_mellin(GammaFamily(a, 1.0), z)
        assert abs(lhs - rhs) < 1e-12


@pytest.mark.parametrize("q", [0.3, 0.5, 0.8])
@pytest.mark.parametrize("c", [0.5, 1.0, 2.0])
def test_vc_density_moments(q, c):
    fam = LogNormalQFamily(q, c)
    dens = vc_density(fam)
    for n in range(7):
        target = vc_mellin(fam, n).real
        got = moment(dens, n, tol=1e-11).value
        assert got == pytest.approx(target, rel=1e-8)


def test_vc_mellin_closed_form():
    fam = LogNormalQFamily(0.5, 1.0)
    for n in range(5):
        assert vc_mellin(fam, n).real == pytest.approx(
            2.0 ** (n * (n + 1) / 2.0), rel=1e-13)


@pytest.mark.parametrize("make,args", [
    (GammaFamily, (1.5,)),
    (BetaFamily, (1.0, 2.5)),
    (LogNormalQFamily, (0.5,)),
])
def test_mellin_semigroup_law(make, args):
    mell = {GammaFamily: gamma_mellin, BetaFamily: beta_mellin,
            LogNormalQFamily: vc_mellin}[make]
    for z in (0.5, 1.0, 2.0 + 1.0j):
        for c, d in ((0.5, 0.5), (1.0, 1.0), (0.3, 1.7)):
            lhs = mell(make(*args, c), z) * mell(make(*args, d), z)
            rhs = mell(make(*args, c + d), z)
            assert abs(lhs - rhs) <= 1e-13 * abs(rhs)


def test_t_transform_example():
    # a_n = (a)_n/(b)_n gives s_n = prod_{k<=n} (b)_k/(a)_k
    a, b = 1.0, 2.5

    def ratio_seq(n):
        return (math.gamma(a + n) / math.gamma(a)
                * math.gamma(b) / math.gamma(b + n))

    s = t_transform(ratio_seq)
    expected = 1.0
    for k in range(1, 5):
        expected /= ratio_seq(k)
    assert s(4) == pytest.approx(expected, rel=1e-12)


def test_t_transform_needs_normalization():
    with pytest.raises(DomainError):
        t_transform(lambda n: 2.0)


def test_t_transform_constant_is_involution_fixed_point():
    s = t_transform(lambda n: 1.0)
    for n in range(5):
        assert s(n) == 1.0


def test_family_validation():
    with pytest.raises(DomainError):
        GammaFamily(-1.0, 1.0)
    with pytest.raises(DomainError):
        LogNormalQFamily(1.5, 1.0)
    with pytest.raises(DomainError):
        LogNormalQFamily(0.5, -1.0)
