import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from momentforge import (AtomicMeasure, DomainError, MomentSequence,
                         additive_convolve, mellin, moment, product_convolve,
                         pushforward)
from momentforge.semigroups import GammaFamily, gamma_density


def test_dirac_moment():
    m = AtomicMeasure.dirac(2.0, 3.0)
    assert moment(m, 0).value == 3.0
    assert moment(m, 2).value == 12.0


def test_dirac_at_zero():
    m = AtomicMeasure.dirac(0.0)
    assert m.zero_mass == 1.0
    assert moment(m, 0).value == 1.0
    assert moment(m, 1).value == 0.0


def test_from_pairs_merges_duplicates():
    m = AtomicMeasure.from_pairs([(1.0, 0.5), (1.0, 0.25), (2.0, 1.0)])
    assert len(m.atoms) == 2
    assert m.total_mass == pytest.approx(1.75)


def test_atoms_sorted_by_location():
    m = AtomicMeasure.from_pairs([(3.0, 1.0), (1.0, 1.0), (2.0, 1.0)])
    assert list(m.locations()) == [1.0, 2.0, 3.0]


def test_negative_location_rejected():
    with pytest.raises(DomainError):
        AtomicMeasure.from_pairs([(-1.0, 1.0)])


def test_mellin_matches_moment_at_integers():
    m = AtomicMeasure.from_pairs([(0.5, 0.3), (2.0, 0.7)])
    for n in range(5):
        assert mellin(m, n).value.real == pytest.approx(
            moment(m, n).value, abs=1e-14)


def test_mellin_complex():
    m = AtomicMeasure.dirac(2.0)
    z = 1.0 + 1.0j
    expected = 2.0 ** (1.0 + 1.0j)
    assert abs(mellin(m, z).value - expected) < 1e-14


def test_density_moment_gamma():
    # int x^n x^{a-1} e^{-x} / Gamma(a) = (a)_n
    dens = gamma_density(GammaFamily(1.5))
    for n in range(5):
        expected = math.gamma(1.5 + n) / math.gamma(1.5)
        assert moment(dens, n).value == pytest.approx(expected, rel=1e-11)


@given(st.lists(st.tuples(st.floats(0.1, 5.0), st.floats(0.01, 2.0)),
                min_size=1, max_size=6),
       st.lists(st.tuples(st.floats(0.1, 5.0), st.floats(0.01, 2.0)),
                min_size=1, max_size=6))
@settings(max_examples=50, deadline=None)
def test_product_convolve_multiplies_moments(pairs1, pairs2):
    m1 = AtomicMeasure.from_pairs(pairs1)
    m2 = AtomicMeasure.from_pairs(pairs2)
    m = product_convolve(m1, m2)
    for n in range(3):
        lhs = moment(m, n).value
        rhs = moment(m1, n).value * moment(m2, n).value
        assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-12)


@given(st.lists(st.tuples(st.floats(0.1, 5.0), st.floats(0.01, 2.0)),
                min_size=1, max_size=5),
       st.lists(st.tuples(st.floats(0.1, 5.0), st.floats(0.01, 2.0)),
                min_size=1, max_size=5),
       st.floats(0.1, 2.0))
@settings(max_examples=50, deadline=None)
def test_additive_convolve_multiplies_laplace(pairs1, pairs2, s):
    m1 = AtomicMeasure.from_pairs(pairs1)
    m2 = AtomicMeasure.from_pairs(pairs2)
    m = additive_convolve(m1, m2)
    assert m.laplace(s) == pytest.approx(m1.laplace(s) * m2.laplace(s),
                                         rel=1e-12, abs=1e-13)


def test_additive_convolve_zero_mass_is_identity_atom():
    delta0 = AtomicMeasure.dirac(0.0)
    m = AtomicMeasure.from_pairs([(1.0, 0.5), (2.0, 0.5)])
    conv = additive_convolve(delta0, m)
    assert conv.atoms == m.atoms
    assert conv.zero_mass == 0.0


def test_pushforward_exp_neg():
    m = AtomicMeasure.from_pairs([(math.log(2.0), 1.0)])
    image = pushforward(m, "exp-neg", 1.0)
    assert image.atoms[0][0] == pytest.approx(0.5)


def test_pushforward_roundtrip():
    m = AtomicMeasure.from_pairs([(0.5, 0.25), (1.5, 0.75)])
    back = pushforward(pushforward(m, "exp-neg", 1.0), "neg-log")
    assert back.locations() == pytest.approx(m.locations())
    assert back.weights() == pytest.approx(m.weights())


def test_pushforward_scale():
    m = AtomicMeasure.dirac(3.0)
    assert pushforward(m, "scale", 2.0).atoms[0][0] == 6.0


def test_pushforward_neg_log_rejects_above_one():
    m = AtomicMeasure.dirac(1.5)
    with pytest.raises(DomainError):
        pushforward(m, "neg-log")


def test_json_roundtrip():
    m = AtomicMeasure.from_pairs([(0.5, 0.25), (2.0, 0.5)],
                                 zero_mass=0.25, truncation_error=1e-12)
    back = AtomicMeasure.from_json_dict(m.to_json_dict())
    assert back == m


def test_moment_sequence_from_values():
    s = MomentSequence.from_values([1.0, 2.0, 6.0])
    assert s(2) == 6.0
    assert s.log(2) == pytest.approx(math.log(6.0))
    assert s.normalized


def test_moment_sequence_log_fn():
    s = MomentSequence(log_fn=lambda n: n * math.log(3.0), normalized=True)
    assert s(2) == pytest.approx(9.0)


def test_truncation_error_propagates_through_product():
    m1 = AtomicMeasure.from_pairs([(1.0, 1.0)], truncation_error=1e-10)
    m2 = AtomicMeasure.from_pairs([(1.0, 1.0)], truncation_error=1e-11)
    m = product_convolve(m1, m2)
    assert m.truncation_error >= 1e-10


def test_moment_error_bound_scales_with_location():
    m = AtomicMeasure.from_pairs([(10.0, 1.0)], truncation_error=1e-12)
    assert moment(m, 3).abs_error == pytest.approx(1e-12 * 1000.0)
