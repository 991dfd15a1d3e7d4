"""
Modal dynamics: propagators, energy, psi(t), witnesses
"""
import dataclasses
import math

import numpy as np
import pytest
from scipy.linalg import expm

from dampinglab.analysis.damping import DampingFunction
from dampinglab.analysis.modal_dynamics import (
    ModalState,
    constant_energy_witness,
    dissipation_rate,
    energy,
    evolve,
    growth_bound_estimate,
    mode_matrix,
    mode_propagator,
    propagators,
    psi_decay,
    psi_norm,
    random_state,
    semigroup_norm,
    state_from_displacement,
    trajectory,
)
from dampinglab.analysis.models import beam_rotational, klein_gordon, wave
from dampinglab.analysis.spectrum_model import make_spectrum
from dampinglab.analysis.stability import Verdict, classify
from dampinglab.errors import InvalidParameter, NotBijective

SEEDS = range(20)


# ============================================================================
# PROPAGATORS
# ============================================================================

@pytest.mark.parametrize('s, fs, t', [
    (4.0, 1.0, 0.7),      # underdamped
    (1.0, 2.0, 1.3),      # critical
    (1.0, 3.0, 0.2),      # overdamped, small spread * t
    (1.0, 50.0, 3.0),     # overdamped, two-exponential form
    (9.0, 0.0, 5.0),      # undamped
])
def test_propagator_matches_matrix_exponential(s, fs, t):
    expected = expm(t * mode_matrix(s, fs).entries)
    np.testing.assert_allclose(mode_propagator(s, fs, t).real, expected, rtol=1e-9, atol=1e-12)


def test_propagator_at_time_zero_is_identity():
    p = propagators([1.0, 4.0, 9.0], [0.5, 5.0, 6.0], 0.0)
    np.testing.assert_allclose(p, np.broadcast_to(np.eye(2), (3, 2, 2)), atol=1e-15)


def test_negative_time_rejected():
    with pytest.raises(InvalidParameter):
        propagators([1.0], [1.0], -1.0)


def test_mode_matrix_inverse_and_eigenvalues():
    matrix = mode_matrix(4.0, 1.0)
    np.testing.assert_allclose(matrix.inverse @ matrix.entries, np.eye(2), atol=1e-15)
    eigenvalues = np.sort_complex(np.linalg.eigvals(matrix.entries))
    pair = matrix.eigenvalues
    np.testing.assert_allclose(eigenvalues, np.sort_complex([pair.xi_minus, pair.xi_plus]), atol=1e-12)


# ============================================================================
# STATES AND ENERGY
# ============================================================================

def test_modal_state_is_immutable():
    state = ModalState([1.0, 4.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0])
    with pytest.raises(ValueError):
        state.w[0] = 2.0
    with pytest.raises(dataclasses.FrozenInstanceError):
        state.time = 1.0


def test_modal_state_validation():
    with pytest.raises(InvalidParameter):
        ModalState([4.0, 1.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0])
    with pytest.raises(InvalidParameter):
        ModalState([1.0], [1.0, 2.0], [1.0], [1.0])


def test_state_from_displacement_sorts_modes():
    f = DampingFunction.power(0.0)
    state = state_from_displacement(f, [4.0, 1.0], [1.0, 2.0], [0.0, 3.0])
    np.testing.assert_array_equal(state.s, [1.0, 4.0])
    np.testing.assert_allclose(state.w, [2.0, 2.0])
    np.testing.assert_allclose(state.displacement(), [2.0, 1.0])
    assert energy(state) == pytest.approx(0.5 * (4.0 + 9.0 + 4.0))


def test_random_state_is_seeded_and_normalized():
    model = wave(0.0)
    first = random_state(model.damping, model.spectrum, 50, seed=7)
    again = random_state(model.damping, model.spectrum, 50, seed=7)
    other = random_state(model.damping, model.spectrum, 50, seed=8)
    assert energy(first) == pytest.approx(0.5, rel=1e-12)
    np.testing.assert_array_equal(first.w, again.w)
    assert not np.array_equal(first.w, other.w)


@pytest.mark.parametrize('theta', [-1.0, 0.0, 1.0])
def test_energy_dissipation_identity(theta):
    model = wave(theta)
    h = 1e-5
    for seed in SEEDS:
        state = random_state(model.damping, model.spectrum, 100, seed=seed)
        points = trajectory(state, np.linspace(0.0, 20.0, 41))
        energies = [point.energy for point in points]
        for before, after in zip(energies, energies[1:]):
            assert after <= before * (1.0 + 1e-12) + 1e-300

        for t in (1.0, 3.0):
            slope = (energy(evolve(state, t + h)) - energy(evolve(state, t - h))) / (2.0 * h)
            rate = dissipation_rate(evolve(state, t))
            assert slope == pytest.approx(rate, rel=1e-6)


def test_evolution_composes():
    model = wave(0.5)
    state = random_state(model.damping, model.spectrum, 30, seed=3)
    direct = evolve(state, 2.5)
    stepped = evolve(evolve(state, 1.0), 1.5)
    np.testing.assert_allclose(stepped.w, direct.w, rtol=1e-10, atol=1e-14)
    assert stepped.time == pytest.approx(2.5)


# ============================================================================
# EXPONENTIAL AND CONSTANT-ENERGY REGIMES
# ============================================================================

def test_weak_damping_decays_at_the_spectral_bound():
    model = wave(0.0)
    times = np.linspace(0.0, 20.0, 81)
    for seed in SEEDS:
        state = random_state(model.damping, model.spectrum, 100, seed=seed)
        for t in times:
            assert evolve(state, t).norm <= 10.0 * math.exp(-0.49 * t) * state.norm


def test_semigroup_is_a_contraction():
    model = wave(0.0)
    assert semigroup_norm(model.damping, model.spectrum, 0.0, 50) == pytest.approx(1.0)
    assert semigroup_norm(model.damping, model.spectrum, 3.0, 50) <= 1.0


def test_growth_bound_estimate_near_spectral_bound():
    model = wave(0.0)
    rate = growth_bound_estimate(model.damping, model.spectrum, np.linspace(1.0, 40.0, 40), 50)
    assert rate == pytest.approx(-0.5, abs=0.05)


def test_constant_energy_witness():
    spec = make_spectrum({'eigenvalues': [1, 4, 9]})
    f = DampingFunction.tabulated([(1, 1), (4, 0), (9, 1)])
    witness = constant_energy_witness(f, spec)
    assert witness is not None
    assert witness.mode == 4.0
    assert witness.times[-1] == 100.0
    assert witness.max_deviation <= 1e-12 * witness.energies[0]
    assert witness.verified is True


def test_witness_for_a_zero_within_tolerance():
    spec = make_spectrum({'eigenvalues': [1, 4, 9]})
    f = DampingFunction.tabulated([(1, 1), (4, 1e-13), (9, 1)])
    assert classify(f, spec).verdict is Verdict.NOT_STABLE
    witness = constant_energy_witness(f, spec)
    assert witness is not None
    assert witness.mode == 4.0
    assert witness.state.fs[0] == pytest.approx(1e-13)
    assert witness.verified is True


def test_no_witness_without_eigenvalue_zeros():
    model = wave(0.0)
    assert constant_energy_witness(model.damping, model.spectrum) is None
    model = klein_gordon(1.0)
    assert constant_energy_witness(model.damping, model.spectrum) is None


# ============================================================================
# PSI(T)
# ============================================================================

def test_psi_at_zero_is_the_inverse_norm():
    model = wave(0.0)
    assert psi_norm(model.damping, model.spectrum, 0.0, 50) == pytest.approx((1 + math.sqrt(5)) / 2, rel=1e-12)


def test_psi_needs_invertible_generator():
    model = wave(2.0)
    with pytest.raises(NotBijective):
        psi_norm(model.damping, model.spectrum, 1.0)


def test_psi_with_tabulated_damping_without_tail():
    spec = make_spectrum({'tail': 'square'})
    f = DampingFunction.tabulated([(1, 1), (100, 1)])
    value = psi_norm(f, spec, 1.0, 20)
    assert math.isfinite(value) and value > 0
    state = random_state(f, spec, 20, seed=3)
    assert state.s.max() == 100.0
    assert energy(state) == pytest.approx(0.5, rel=1e-12)


@pytest.mark.parametrize('model, slope, tolerance', [
    (wave(-1.0), -0.5, 0.05),
    (wave(-0.5), -1.0, 0.1),
    (beam_rotational(0.0, 1.0), -0.5, 0.05),
])
def test_semiuniform_decay_slope(model, slope, tolerance):
    decay = psi_decay(model.damping, model.spectrum, np.geomspace(10.0, 1e3, 40), 300)
    assert decay.fit.slope == pytest.approx(slope, abs=tolerance)
    assert decay.fit.points >= 10


def test_psi_certification_stops_at_the_horizon():
    model = wave(-0.5)
    decay = psi_decay(model.damping, model.spectrum, np.geomspace(10.0, 1e4, 60), 100)
    profile = decay.profile
    assert not profile.certified.all()
    assert profile.warnings
    assert np.all(profile.mode_s[profile.certified] <= 0.5 * 100 ** 2)
