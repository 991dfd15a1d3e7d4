"""
Damping functions, extremal quantities and rate exponents
"""
import math

import numpy as np
import pytest

from dampinglab.analysis import damping
from dampinglab.analysis.damping import (
    Certainty,
    DampingFunction,
    TabulatedTail,
    covered_modes,
    covers_spectrum,
    extremes,
    lambda_limit_set,
    make_damping,
    rate_exponents,
    rotational_root,
    tail_limits,
)
from dampinglab.analysis.spectrum_model import make_spectrum
from dampinglab.errors import InvalidParameter, OutOfRange

SQUARES = make_spectrum({'tail': 'square'})
ROTATIONAL = make_spectrum({'tail': 'rotational', 'tail_omega': 1.0})


# ============================================================================
# EVALUATION
# ============================================================================

def test_power_damping_value():
    assert damping.eval(DampingFunction.power(-1.0), 4.0) == pytest.approx(0.25, rel=1e-15)


def test_rotational_inertia_at_a_beam_eigenvalue():
    # lambda = 4 gives nu = 16 / 5 and f(nu) = lambda^0 / (1 + lambda)
    f = DampingFunction.rotational_inertia(0.0, 1.0)
    assert damping.eval(f, 3.2) == pytest.approx(0.2, rel=1e-12)
    assert float(rotational_root(3.2, 1.0)) == pytest.approx(4.0, rel=1e-12)


def test_zero_damping_value():
    assert damping.eval(DampingFunction.zero(), 7.0) == 0.0


def test_eval_needs_positive_point():
    with pytest.raises(InvalidParameter):
        damping.eval(DampingFunction.power(1.0), 0.0)


def test_tabulated_interpolates_between_knots():
    f = DampingFunction.tabulated([(1, 2), (3, 4)])
    assert damping.eval(f, 2.0) == pytest.approx(3.0)


def test_tabulated_without_tail_refuses_extrapolation():
    f = DampingFunction.tabulated([(1, 2), (3, 4)])
    with pytest.raises(OutOfRange):
        f.evaluate(5.0)
    with pytest.raises(OutOfRange):
        f.evaluate(0.5)


def test_covered_modes_drop_points_past_the_last_knot():
    f = DampingFunction.tabulated([(1, 1), (100, 1)])
    np.testing.assert_array_equal(covered_modes(f, SQUARES, 20), [n * n for n in range(1, 11)])
    assert covers_spectrum(f, SQUARES) is False
    assert covered_modes(DampingFunction.power(1.0), SQUARES, 20).size == 20


def test_covered_modes_refuse_an_unreachable_table():
    f = DampingFunction.tabulated([(500, 1), (900, 1)])
    with pytest.raises(OutOfRange):
        covered_modes(f, SQUARES, 10)
    assert covered_modes(f, SQUARES, 10, allow_empty=True).size == 0


def test_tabulated_tail_is_continuous_and_asymptotic():
    f = DampingFunction.tabulated([(1, 2), (3, 4)], TabulatedTail(power=1.0, coefficient=0.5))
    assert float(f.evaluate(3.0 + 1e-9)) == pytest.approx(4.0, rel=1e-6)
    large = 1e8
    assert float(f.evaluate(large)) / large == pytest.approx(0.5, rel=1e-6)
    assert np.all(f.evaluate(np.geomspace(3, 1e6, 50)) >= 0)


def test_constructor_validation():
    with pytest.raises(InvalidParameter):
        DampingFunction.rotational_inertia(1.0, 0.0)
    with pytest.raises(InvalidParameter):
        DampingFunction.constant_damping(-1.0)
    with pytest.raises(InvalidParameter):
        DampingFunction.tabulated([(1, 1), (2, -1)])
    with pytest.raises(InvalidParameter):
        DampingFunction.tabulated([(1, 1)])


def test_make_damping_from_mapping():
    f = make_damping({'family': 'rotational', 'theta': 1.5, 'omega': 2.0})
    assert f == DampingFunction.rotational_inertia(1.5, 2.0)
    g = make_damping({'family': 'tabulated', 'knots': [(3, 1), (1, 0)], 'tail_power': -1})
    assert g.knots == ((1.0, 0.0), (3.0, 1.0))
    assert g.tail.power == -1.0
    with pytest.raises(InvalidParameter):
        make_damping({'family': 'viscous'})


# ============================================================================
# EXTREMES
# ============================================================================

def test_weak_damping_extremes():
    bounds = extremes(DampingFunction.power(0.0), SQUARES)
    assert bounds.inf_f == 1.0
    assert bounds.sup_f_over_s == 1.0
    assert bounds.sup_f_over_sqrt_s == 1.0
    assert bounds.inf_f_certainty is Certainty.EXACT
    assert bounds.inf_positive is True
    assert bounds.sup_ratio_finite is True
    assert bounds.domain_factorizes is True


def test_subdamped_infimum_is_a_limit():
    bounds = extremes(DampingFunction.power(-1.0), SQUARES)
    assert bounds.inf_f == 0.0
    assert bounds.inf_is_limit is True
    assert bounds.inf_positive is False


def test_strong_damping_ratio():
    assert extremes(DampingFunction.power(1.0), SQUARES).sup_f_over_s == 1.0
    assert extremes(DampingFunction.power(1.0), SQUARES).domain_factorizes is False
    assert extremes(DampingFunction.power(2.0), SQUARES).sup_ratio_finite is False


def test_rotational_extremes_theta_one():
    bounds = extremes(DampingFunction.rotational_inertia(1.0, 1.0), ROTATIONAL)
    # s0 = 1/2 has root 1, and f = l / (1 + l) increases towards 1
    assert bounds.inf_f == pytest.approx(0.5, rel=1e-12)
    assert bounds.inf_positive is True
    assert bounds.sup_ratio_finite is True


def test_tabulated_without_tail_is_sampled_on_unbounded_spectrum():
    f = DampingFunction.tabulated([(1, 1), (100, 1)])
    bounds = extremes(f, SQUARES, budget=20)
    assert bounds.sup_f_over_s_certainty is Certainty.SAMPLED
    assert bounds.sup_ratio_finite is None


def test_tabulated_tail_certifies_finiteness():
    f = DampingFunction.tabulated([(1, 1), (100, 0.1)], TabulatedTail(power=-0.5, coefficient=1.0))
    bounds = extremes(f, SQUARES)
    assert bounds.sup_ratio_finite is True
    assert bounds.inf_f == 0.0
    assert bounds.inf_positive is False


# ============================================================================
# RATES AND LIMITS
# ============================================================================

def test_power_rate_exponents():
    rates = rate_exponents(DampingFunction.power(-0.5), SQUARES)
    assert (rates.alpha, rates.beta) == (0.5, 0.5)
    assert rates.exact


def test_rotational_rate_exponents():
    rates = rate_exponents(DampingFunction.rotational_inertia(0.0, 1.0), ROTATIONAL)
    assert (rates.alpha, rates.beta) == (1.0, 1.0)


def test_bounded_spectrum_has_no_rates():
    bounded = make_spectrum({'eigenvalues': [1, 2]})
    rates = rate_exponents(DampingFunction.power(-1.0), bounded)
    assert rates.alpha is None and rates.beta is None


def test_lambda_limit_set():
    assert lambda_limit_set(DampingFunction.power(1.0), SQUARES) == frozenset({1.0})
    assert lambda_limit_set(DampingFunction.power(0.5), SQUARES) == frozenset()
    assert lambda_limit_set(DampingFunction.tabulated([(1, 1), (2, 2)]), SQUARES) == frozenset()
    tail = TabulatedTail(power=1.0, coefficient=0.25)
    assert lambda_limit_set(DampingFunction.tabulated([(1, 1), (2, 2)], tail), SQUARES) == frozenset({0.25})


def test_tail_limits():
    limits = tail_limits(DampingFunction.power(1.0))
    assert (limits.f, limits.f_over_sqrt_s, limits.f_over_s) == (math.inf, math.inf, 1.0)
    assert tail_limits(DampingFunction.tabulated([(1, 1), (2, 2)])) is None
