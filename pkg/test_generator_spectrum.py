"""
Generator spectrum: roots, portraits, imaginary-axis points
"""
import math
from decimal import Decimal, getcontext

import numpy as np
import pytest

from dampinglab.analysis.damping import DampingFunction
from dampinglab.analysis.generator_spectrum import (
    PointLabel,
    Regime,
    imaginary_spectrum,
    is_bijective,
    portrait,
    regime_summary,
    xi_pair,
    xi_roots,
)
from dampinglab.analysis.models import klein_gordon, wave
from dampinglab.analysis.spectrum_model import make_spectrum, sample_modes


def _points(result, label):
    return [point for point in result.points if point.label is label]


# ============================================================================
# ROOTS
# ============================================================================

def test_weakly_damped_wave_closed_form():
    model = wave(0.0)
    s = sample_modes(model.spectrum, 50)
    xi_plus, xi_minus, regime = xi_roots(s, model.damping.evaluate(s))
    n = np.arange(1, 51)
    expected = -0.5 + 1j * np.sqrt(4.0 * n ** 2 - 1.0) / 2.0
    assert np.max(np.abs(xi_plus - expected)) <= 1e-12
    assert np.max(np.abs(xi_minus - np.conj(expected))) <= 1e-12
    assert set(regime) == {Regime.UNDERDAMPED.value}


def test_overdamped_root_has_no_cancellation():
    getcontext().prec = 50
    s, fs = 1.0, 1e8
    exact = (-Decimal(fs) + (Decimal(fs) ** 2 - 4 * Decimal(s)).sqrt()) / 2
    pair = xi_pair(s, fs)
    assert pair.regime is Regime.OVERDAMPED
    assert pair.xi_plus.real == pytest.approx(float(exact), rel=1e-14)
    assert pair.xi_plus.real * pair.xi_minus.real == pytest.approx(s, rel=1e-14)


def test_critical_mode():
    pair = xi_pair(1.0, 2.0)
    assert pair.regime is Regime.CRITICAL
    assert pair.xi_plus == pair.xi_minus == -1.0


# ============================================================================
# PORTRAITS
# ============================================================================

def test_strong_damping_accumulates_at_minus_one():
    model = wave(1.0)
    result = portrait(model.damping, model.spectrum, 50)
    assert [point.value for point in _points(result, PointLabel.LAMBDA_POINT)] == [-1.0]
    for point in _points(result, PointLabel.XI_PLUS):
        n = math.sqrt(point.source)
        if n >= 3:
            assert abs(point.value + 1.0) <= 2.0 / n ** 2


def test_weak_damping_spectral_bound_is_exact():
    model = wave(0.0)
    result = portrait(model.damping, model.spectrum, 50)
    assert result.spectral_bound == pytest.approx(-0.5, abs=1e-15)
    assert result.bound_exact is True
    assert result.contains_zero is False
    assert len(result.points) == 100


def test_subdamped_points_approach_the_axis():
    model = wave(-1.0)
    result = portrait(model.damping, model.spectrum, 100)
    real_parts = [point.value.real for point in _points(result, PointLabel.XI_PLUS)]
    assert all(value < 0 for value in real_parts)
    assert real_parts[-1] == pytest.approx(-0.5 / 100 ** 2, rel=1e-9)
    assert result.spectral_bound == 0.0


def test_zero_in_spectrum_when_ratio_unbounded():
    model = wave(2.0)
    assert is_bijective(model.damping, model.spectrum) is False
    result = portrait(model.damping, model.spectrum, 20)
    assert result.contains_zero is True
    assert len(_points(result, PointLabel.ZERO)) == 1
    assert result.spectral_bound == 0.0


def test_bounded_operator_is_bijective():
    spec = make_spectrum({'eigenvalues': [1, 2, 3]})
    assert is_bijective(DampingFunction.power(5.0), spec) is True


def test_continuous_portrait_is_flagged_sampled():
    model = klein_gordon(1.0)
    result = portrait(model.damping, model.spectrum, 30)
    assert result.sampled is True
    assert all(point.eigenvalue is False for point in result.points)
    assert all(point.value.real == 0.0 for point in _points(result, PointLabel.XI_PLUS))


def test_portrait_of_tabulated_damping_without_tail():
    spec = make_spectrum({'tail': 'square'})
    f = DampingFunction.tabulated([(1, 1), (100, 1)])
    result = portrait(f, spec, 20)
    sources = [point.source for point in _points(result, PointLabel.XI_PLUS)]
    assert sources == [float(n * n) for n in range(1, 11)]
    assert result.bound_exact is False
    assert any('tabulated range' in warning for warning in result.warnings)
    assert regime_summary(f, spec, 20)['modes'] == 10


def test_portrait_rows():
    model = wave(0.0)
    rows = list(portrait(model.damping, model.spectrum, 3).rows())
    assert len(rows) == 6
    assert rows[0] == (1.0, 'xi_plus', -0.5, math.sqrt(3.0) / 2.0, True, 'underdamped')


# ============================================================================
# IMAGINARY AXIS AND REGIMES
# ============================================================================

def test_imaginary_points_from_zero_set():
    spec = make_spectrum({'eigenvalues': [1, 4, 9]})
    f = DampingFunction.tabulated([(1, 1), (4, 0), (9, 1)])
    axis = imaginary_spectrum(f, spec)
    assert axis.points == (-2.0, 2.0)
    assert axis.contains(2.0) and axis.contains(-2.0)
    assert not axis.contains(3.0)


def test_undamped_continuous_axis():
    model = klein_gordon(1.0)
    axis = imaginary_spectrum(model.damping, model.spectrum)
    assert axis.whole_spectrum is True
    assert axis.contains(2.0)
    assert not axis.contains(0.5)


def test_regime_counts():
    model = wave(1.0)
    summary = regime_summary(model.damping, model.spectrum, 10)
    assert summary == {'overdamped': 8, 'critical': 1, 'underdamped': 1, 'modes': 10}
