"""
Resolvent norms along the imaginary axis
"""
import numpy as np
import pytest

from dampinglab.analysis.damping import DampingFunction
from dampinglab.analysis.modal_dynamics import mode_matrix
from dampinglab.analysis.models import wave
from dampinglab.analysis.resolvent import (
    ResolventProfile,
    bt_consistency,
    growth_exponent,
    imaginary_axis_bound,
    lambda_grid,
    lower_bound_witness,
    modal_resolvents,
    resolvent_norm,
    resolvent_profile,
)
from dampinglab.analysis.spectrum_model import make_spectrum, sample_modes
from dampinglab.errors import InvalidParameter, NotSemiuniform, OnSpectrum


def _oracle_norm(model, lam, budget):
    s = sample_modes(model.spectrum, budget)
    fs = model.damping.evaluate(s)
    norms = [np.linalg.norm(np.linalg.inv(1j * lam * np.eye(2) - mode_matrix(si, fi).entries), 2)
             for si, fi in zip(s, fs)]
    return max(norms)


# ============================================================================
# NORMS
# ============================================================================

def test_modal_resolvents_match_inversion():
    s = np.array([1.0, 4.0, 9.0])
    fs = np.array([0.3, 1.0, 7.0])
    result = modal_resolvents(s, fs, 2.5)
    for index in range(3):
        expected = np.linalg.inv(2.5j * np.eye(2) - mode_matrix(s[index], fs[index]).entries)
        np.testing.assert_allclose(result[index], expected, rtol=1e-12)


@pytest.mark.parametrize('theta, lam', [(-1.0, 3.3), (0.0, 7.0), (1.0, 0.0), (0.5, 12.5)])
def test_resolvent_norm_matches_inversion(theta, lam):
    model = wave(theta)
    value = resolvent_norm(model.damping, model.spectrum, lam, 40)
    assert value == pytest.approx(_oracle_norm(model, lam, 40), rel=1e-10)


def test_peak_at_a_mode_is_two_over_damping():
    model = wave(-1.0)
    # f(100) = 1/100
    assert resolvent_norm(model.damping, model.spectrum, 10.0, 200) == pytest.approx(200.0, rel=0.02)


def test_continuous_norm_grows_with_the_budget():
    spec = make_spectrum({'intervals': [(1.0, 100.0)]})
    f = DampingFunction.power(-1.0)
    norms = [resolvent_norm(f, spec, 7.3, budget) for budget in (10, 11, 20, 21, 50, 51, 200)]
    assert all(later >= earlier for earlier, later in zip(norms, norms[1:]))


def test_points_on_the_spectrum_are_refused():
    spec = make_spectrum({'eigenvalues': [1, 4, 9]})
    f = DampingFunction.tabulated([(1, 1), (4, 0), (9, 1)])
    with pytest.raises(OnSpectrum):
        resolvent_norm(f, spec, 2.0)
    model = wave(2.0)
    with pytest.raises(OnSpectrum):
        resolvent_norm(model.damping, model.spectrum, 0.0)


# ============================================================================
# PROFILES AND GROWTH
# ============================================================================

def test_lambda_grid_includes_mode_abscissae():
    grid = lambda_grid(np.array([1.0, 4.0, 9.0, 16.0]), 1.5, 3.5, 5)
    assert 2.0 in grid and 3.0 in grid
    assert np.all(np.diff(grid) > 0)
    with pytest.raises(InvalidParameter):
        lambda_grid(np.array([1.0]), 2.0, 1.0)


def test_profile_clips_to_the_truncation():
    model = wave(-1.0)
    profile = resolvent_profile(model.damping, model.spectrum, (10.0, 1e3), budget=50)
    assert profile.lambdas.max() <= 50.0
    assert profile.warnings


def test_profile_skips_spectrum_points():
    spec = make_spectrum({'eigenvalues': [1, 4, 9]})
    f = DampingFunction.tabulated([(1, 1), (4, 0), (9, 1)])
    profile = resolvent_profile(f, spec, lambdas=[1.0, 2.0, 3.0])
    np.testing.assert_array_equal(profile.lambdas, [1.0, 3.0])


def test_envelope_keeps_local_maxima():
    profile = ResolventProfile(np.arange(5.0), np.array([1.0, 3.0, 2.0, 4.0, 1.0]), np.ones(5))
    lambdas, norms = profile.envelope()
    np.testing.assert_array_equal(lambdas, [1.0, 3.0])
    np.testing.assert_array_equal(norms, [3.0, 4.0])


def test_subdamped_growth_exponent():
    model = wave(-1.0)
    growth = growth_exponent(model.damping, model.spectrum, (10.0, 1e3), budget=1000)
    assert growth.exponent == pytest.approx(2.0, abs=0.1)


def test_growth_needs_semiuniform_stability():
    model = wave(0.0)
    with pytest.raises(NotSemiuniform):
        growth_exponent(model.damping, model.spectrum)


def test_lower_bound_witness():
    model = wave(-1.0)
    witness = lower_bound_witness(model.damping, model.spectrum, 1.0, 200)
    assert witness.minimum >= 1.5
    with pytest.raises(InvalidParameter):
        lower_bound_witness(DampingFunction.zero(), make_spectrum({'intervals': [(1.0, 2.0)]}), 1.0)


@pytest.mark.parametrize('theta', [-1.0, -0.5])
def test_decay_and_resolvent_exponents_agree(theta):
    model = wave(theta)
    report = bt_consistency(model.damping, model.spectrum)
    assert report.consistent is True
    assert abs(report.nu_hat - report.nu_tilde) <= 0.2
    assert report.nu_hat == pytest.approx(-2.0 * theta, abs=0.2)


def test_bounded_resolvent_for_exponential_stability():
    model = wave(1.0)
    small = imaginary_axis_bound(model.damping, model.spectrum, 1e3, budget=100)
    large = imaginary_axis_bound(model.damping, model.spectrum, 1e3, budget=1000)
    assert small == pytest.approx(large, rel=0.01)
    assert small == pytest.approx(4 / np.sqrt(3), rel=0.01)


def test_tabulated_damping_without_tail_uses_its_known_range():
    spec = make_spectrum({'tail': 'square'})
    f = DampingFunction.tabulated([(1, 1), (100, 1)])
    value = resolvent_norm(f, spec, 3.5, budget=20)
    expected = resolvent_norm(f, make_spectrum({'eigenvalues': [n * n for n in range(1, 11)]}), 3.5)
    assert value == pytest.approx(expected, rel=1e-12)
    profile = resolvent_profile(f, spec, (1.5, 20.0), budget=20)
    assert profile.lambdas.max() <= 10.0
    assert profile.warnings
    assert np.all(np.isfinite(profile.norms))
