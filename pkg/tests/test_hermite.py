import math

import numpy as np
import pytest

from momentforge import (DomainError, generating_G, hermite_H, hermite_eval,
                         hermite_h, positivity_scan)
from momentforge.errors import BudgetError, RangeError


def test_H_base_cases():
    assert hermite_H(0, 3.7) == 1.0
    assert hermite_H(1, 0.5) == 1.0
    assert hermite_H(2, 1.0) == 2.0


def test_H_known_values():
    # H_3(x) = 8x^3 - 12x
    for x in (-1.0, 0.3, 2.0):
        assert hermite_H(3, x) == pytest.approx(8 * x ** 3 - 12 * x)


def test_H_overflow_raises():
    with pytest.raises(RangeError):
        hermite_H(400, 30.0)


def test_exponential_generating_function():
    total = sum(hermite_H(k, 1.0) * 0.3 ** k / math.factorial(k)
                for k in range(31))
    assert total == pytest.approx(math.exp(0.51), abs=1e-10)


def test_h_normalization():
    assert hermite_h(0, 2.0) == 1.0
    assert hermite_h(1, 1.0) == pytest.approx(math.sqrt(2.0))


def test_h_matches_H_scaled():
    for n in range(8):
        for x in (-2.0, 0.5, 3.0):
            scale = math.sqrt(2.0 ** n * math.factorial(n))
            assert hermite_h(n, x) == pytest.approx(hermite_H(n, x) / scale,
                                                    rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("n", [5, 20, 100, 200])
def test_szasz_bound(n):
    for x in np.arange(-6.0, 6.01, 0.5):
        assert abs(hermite_h(n, float(x))) <= math.exp(0.5 * x * x)


def test_szasz_specific():
    assert abs(hermite_h(20, 3.0)) <= math.exp(4.5)


def test_hermite_eval_consistency():
    ev = hermite_eval(10, 1.5)
    assert ev.H == pytest.approx(hermite_H(10, 1.5), rel=1e-11)
    assert ev.h == pytest.approx(hermite_h(10, 1.5), rel=1e-12)


def test_orthonormality_gauss_hermite():
    nodes, weights = np.polynomial.hermite.hermgauss(60)
    inv_sqrt_pi = 1.0 / math.sqrt(math.pi)
    for n in range(9):
        for m in range(n, 9):
            total = inv_sqrt_pi * sum(
                w * hermite_h(n, float(x)) * hermite_h(m, float(x))
                for x, w in zip(nodes, weights))
            assert total == pytest.approx(1.0 if n == m else 0.0,
                                          abs=1e-8)


def test_G_at_t_zero():
    g = generating_G(0.0, 5.0)
    assert g.value == 1.0
    assert g.tail_bound == 0.0


def test_G_direct_oracle():
    g = generating_G(0.5, 0.0, tol=1e-12)
    oracle = sum(hermite_h(2 * k, 0.0) * 0.5 ** (2 * k) for k in range(100))
    assert g.value == pytest.approx(oracle, abs=1e-11)


def test_G_tail_bound_formula():
    g = generating_G(0.5, 1.0, tol=1e-10)
    N = g.terms_used - 1
    expected = math.exp(0.5) * 0.5 ** (N + 1) / 0.5
    assert g.tail_bound == pytest.approx(expected, rel=1e-12)
    assert g.tail_bound <= 1e-10


def test_G_positive_at_hard_points():
    assert generating_G(0.9, -5.0).value > 0
    assert generating_G(-0.9, 8.0).value > 0
    g = generating_G(0.95, -10.0)
    assert g.value - g.tail_bound > 0


def test_G_large_x_uses_high_precision():
    # binary64 summation alone loses ~20 digits here; the certified value
    # must still be small and positive
    g = generating_G(0.95, -10.0)
    assert g.value == pytest.approx(0.0272191, abs=1e-6)


def test_G_domain():
    with pytest.raises(DomainError):
        generating_G(1.0, 0.0)
    with pytest.raises(DomainError):
        generating_G(-1.2, 0.0)


def test_G_budget():
    with pytest.raises(BudgetError):
        generating_G(0.999999, 0.0, tol=1e-10, max_terms=1000)


def test_scan_trivial_grid():
    report = positivity_scan([0.0], [0.0])
    assert report.all_positive
    assert report.min_value == 1.0


def test_scan_small_grid():
    report = positivity_scan([-0.9, -0.5, 0.0, 0.5, 0.9],
                             [-8.0, -1.0, 0.0, 1.0, 8.0], tol=1e-10)
    assert report.all_positive
    assert report.min_certified > 0
    assert len(report.points) == 25


def test_scan_single_hard_point():
    report = positivity_scan([-0.9], [8.0], tol=1e-10)
    assert report.all_positive
