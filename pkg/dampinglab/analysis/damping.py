"""
Damping function f on the spectrum of A

Besides evaluation, this module provides the extremal and asymptotic
quantities every stability criterion is phrased in: inf f, sup f/s,
sup f/sqrt(s), the polynomial weights alpha and beta, and the set of
limits of f(s)/s along s -> inf.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Mapping, Sequence

import numpy as np

from dampinglab.analysis.spectrum_model import (
    DEFAULT_BUDGET,
    SpectrumSpec,
    bracket,
    eigenvalues_up_to,
    sample_modes,
    zero_set,
)
from dampinglab.errors.exceptions import InvalidParameter, OutOfRange

logger = logging.getLogger(__name__)


class DampingFamily(str, Enum):
    ZERO = 'zero'
    CONSTANT = 'constant'
    POWER = 'power'
    ROTATIONAL_INERTIA = 'rotational'
    TABULATED = 'tabulated'


class Certainty(str, Enum):
    EXACT = 'exact'            # closed form
    CERTIFIED = 'certified'    # positivity / finiteness certified, value sampled
    SAMPLED = 'sampled'        # sampled bound only


@dataclass(frozen=True)
class TabulatedTail:
    """f(s) ~ coefficient * s**power as s -> inf"""
    power: float
    coefficient: float

    def __post_init__(self):
        if not self.coefficient >= 0:
            raise InvalidParameter('tail coefficient must be nonnegative')


@dataclass(frozen=True)
class DampingFunction:
    family: DampingFamily
    constant: float = 0.0
    theta: float = 0.0
    omega: float = 0.0
    knots: tuple[tuple[float, float], ...] = ()
    tail: TabulatedTail | None = None

    def __post_init__(self):
        if self.family is DampingFamily.CONSTANT and not self.constant >= 0:
            raise InvalidParameter('constant damping must be nonnegative')
        if self.family is DampingFamily.ROTATIONAL_INERTIA and not self.omega > 0:
            raise InvalidParameter('rotational inertia needs omega > 0')
        if self.family in (DampingFamily.POWER, DampingFamily.ROTATIONAL_INERTIA):
            if not math.isfinite(self.theta):
                raise InvalidParameter('theta must be finite')
        if self.family is DampingFamily.TABULATED:
            if len(self.knots) < 2:
                raise InvalidParameter('tabulated damping needs at least two knots')
            abscissae = [s for s, _ in self.knots]
            if any(not s > 0 for s in abscissae):
                raise InvalidParameter('knot abscissae must be positive')
            if any(b <= a for a, b in zip(abscissae, abscissae[1:])):
                raise InvalidParameter('knot abscissae must be strictly increasing')
            if any(not value >= 0 for _, value in self.knots):
                raise InvalidParameter('tabulated damping values must be nonnegative')

    # Constructors

    @classmethod
    def zero(cls) -> 'DampingFunction':
        return cls(DampingFamily.ZERO)

    @classmethod
    def constant_damping(cls, c: float) -> 'DampingFunction':
        return cls(DampingFamily.CONSTANT, constant=float(c))

    @classmethod
    def power(cls, theta: float) -> 'DampingFunction':
        return cls(DampingFamily.POWER, theta=float(theta))

    @classmethod
    def rotational_inertia(cls, theta: float, omega: float) -> 'DampingFunction':
        return cls(DampingFamily.ROTATIONAL_INERTIA, theta=float(theta), omega=float(omega))

    @classmethod
    def tabulated(cls, knots: Sequence[Sequence[float]], tail: TabulatedTail | None = None) -> 'DampingFunction':
        ordered = tuple(sorted((float(s), float(value)) for s, value in knots))
        return cls(DampingFamily.TABULATED, knots=ordered, tail=tail)

    # Structural facts

    @property
    def is_parametric(self) -> bool:
        return self.family is not DampingFamily.TABULATED

    @property
    def vanishes_identically(self) -> bool:
        return self.family is DampingFamily.ZERO or (
            self.family is DampingFamily.CONSTANT and self.constant == 0)

    @property
    def strictly_positive(self) -> bool:
        """Positive at every s > 0 (decided from the family alone)"""
        if self.family in (DampingFamily.POWER, DampingFamily.ROTATIONAL_INERTIA):
            return True
        return self.family is DampingFamily.CONSTANT and self.constant > 0

    def covers(self, s: float) -> bool:
        """Whether f can be evaluated at s"""
        if self.family is not DampingFamily.TABULATED:
            return s > 0
        return self.knots[0][0] <= s and (s <= self.knots[-1][0] or self.tail is not None)

    def evaluate(self, s) -> np.ndarray:
        """Vectorized evaluation on positive abscissae"""
        s = np.asarray(s, dtype=float)
        family = self.family

        if family is DampingFamily.ZERO:
            return np.zeros_like(s)
        if family is DampingFamily.CONSTANT:
            return np.full_like(s, self.constant)
        if family is DampingFamily.POWER:
            return s ** self.theta
        if family is DampingFamily.ROTATIONAL_INERTIA:
            return s * rotational_root(s, self.omega) ** (self.theta - 2.0)
        return self._evaluate_tabulated(s)

    def _evaluate_tabulated(self, s: np.ndarray) -> np.ndarray:
        abscissae = np.array([knot for knot, _ in self.knots])
        values = np.array([value for _, value in self.knots])
        first, last = abscissae[0], abscissae[-1]

        if np.any(s < first) or (self.tail is None and np.any(s > last)):
            raise OutOfRange(f'tabulated damping is known on [{first:g}, {last:g}] only')

        result = np.interp(s, abscissae, values)
        beyond = s > last
        if np.any(beyond):
            power, coefficient = self.tail.power, self.tail.coefficient
            offset = values[-1] - coefficient * last ** power
            ratio = last / s[beyond]
            result = np.array(result, dtype=float)
            result[beyond] = coefficient * s[beyond] ** power + offset * ratio ** (abs(power) + 1.0)
        return result

    def __call__(self, s):
        return self.evaluate(s)

    def describe(self) -> dict:
        description: dict[str, Any] = {'family': self.family.value}
        if self.family is DampingFamily.CONSTANT:
            description['constant'] = self.constant
        if self.family in (DampingFamily.POWER, DampingFamily.ROTATIONAL_INERTIA):
            description['theta'] = self.theta
        if self.family is DampingFamily.ROTATIONAL_INERTIA:
            description['omega'] = self.omega
        if self.family is DampingFamily.TABULATED:
            description['knots'] = len(self.knots)
            if self.tail is not None:
                description['tail_power'] = self.tail.power
                description['tail_coefficient'] = self.tail.coefficient
        return description


def rotational_root(s, omega: float):
    """The positive root l of l^2 / (1 + omega l) = s"""
    s = np.asarray(s, dtype=float)
    return (omega * s + np.sqrt(omega ** 2 * s ** 2 + 4.0 * s)) / 2.0


def make_damping(description: Any) -> DampingFunction:
    """
    Build a DampingFunction from a preset, a DampingFunction or a mapping

    Mapping keys: family (zero, constant, power, rotational, tabulated),
    constant, theta, omega, knots (pairs), tail_power, tail_coefficient.
    """
    if isinstance(description, DampingFunction):
        return description
    if hasattr(description, 'damping'):
        return make_damping(description.damping)
    if not isinstance(description, Mapping):
        raise InvalidParameter(f'cannot build a damping function from {type(description).__name__}')

    try:
        family = DampingFamily(str(description.get('family', 'zero')).strip().lower())
    except ValueError as error:
        raise InvalidParameter(f"unknown damping family {description.get('family')!r}") from error

    if family is DampingFamily.ZERO:
        return DampingFunction.zero()
    if family is DampingFamily.CONSTANT:
        return DampingFunction.constant_damping(float(description.get('constant', 0.0)))
    if family is DampingFamily.POWER:
        return DampingFunction.power(float(description.get('theta', 0.0)))
    if family is DampingFamily.ROTATIONAL_INERTIA:
        return DampingFunction.rotational_inertia(
            float(description.get('theta', 0.0)), float(description.get('omega', 1.0)))

    tail = None
    if description.get('tail_power') is not None:
        tail = TabulatedTail(
            power=float(description['tail_power']),
            coefficient=float(description.get('tail_coefficient', 1.0)),
        )
    return DampingFunction.tabulated(description.get('knots', ()), tail)


def eval(f: DampingFunction, s: float) -> float:
    """
    Evaluate the damping at one spectrum point

    Raises:
        InvalidParameter: s <= 0
        OutOfRange: tabulated damping beyond its knots without tail
    """
    if not s > 0:
        raise InvalidParameter(f'damping is defined for s > 0, got {s}')
    return float(f.evaluate(s))


def covers_spectrum(f: DampingFunction, spec: SpectrumSpec) -> bool:
    """Whether f can be evaluated on all of sigma(A)"""
    return f.covers(spec.s0) and f.covers(spec.s_max)


def covered_modes(f: DampingFunction, spec: SpectrumSpec, budget: int = DEFAULT_BUDGET,
                  allow_empty: bool = False) -> np.ndarray:
    """
    Sampled modes on which f can be evaluated

    Tabulated damping without tail metadata is unknown past its last
    knot, so those modes are dropped and the sample covers less of the
    spectrum than the budget asked for.

    Raises:
        OutOfRange: no sampled mode is covered and allow_empty is False
    """
    s = sample_modes(spec, budget)
    if f.is_parametric:
        return s
    keep = np.array([f.covers(float(point)) for point in s], dtype=bool)
    if not keep.all():
        logger.warning('%d of %d sampled modes lie outside the tabulated damping and are skipped',
                       int(np.count_nonzero(~keep)), s.size)
    if not keep.any() and not allow_empty:
        first, last = f.knots[0][0], f.knots[-1][0]
        raise OutOfRange(f'no sampled mode lies where the tabulated damping is known, [{first:g}, {last:g}]')
    return s[keep]


@dataclass(frozen=True)
class DampingExtremes:
    inf_f: float
    sup_f_over_s: float
    sup_f_over_sqrt_s: float
    inf_f_certainty: Certainty
    sup_f_over_s_certainty: Certainty
    sup_f_over_sqrt_s_certainty: Certainty
    inf_is_limit: bool = False

    @property
    def inf_positive(self) -> bool | None:
        if self.inf_f_certainty is not Certainty.SAMPLED:
            return self.inf_f > 0
        # a sampled zero is a genuine zero of f on the spectrum
        return False if self.inf_f == 0 else None

    @property
    def sup_ratio_finite(self) -> bool | None:
        if self.sup_f_over_s_certainty is Certainty.SAMPLED:
            return None
        return math.isfinite(self.sup_f_over_s)

    @property
    def domain_factorizes(self) -> bool | None:
        if self.sup_f_over_sqrt_s_certainty is Certainty.SAMPLED:
            return None
        return math.isfinite(self.sup_f_over_sqrt_s)

    def to_dict(self) -> dict:
        return {
            'inf_f': self.inf_f,
            'inf_is_limit': self.inf_is_limit,
            'sup_f_over_s': self.sup_f_over_s,
            'sup_f_over_sqrt_s': self.sup_f_over_sqrt_s,
            'certainty': {
                'inf_f': self.inf_f_certainty.value,
                'sup_f_over_s': self.sup_f_over_s_certainty.value,
                'sup_f_over_sqrt_s': self.sup_f_over_sqrt_s_certainty.value,
            },
        }


@dataclass(frozen=True)
class RateExponents:
    alpha: float | None
    beta: float | None
    certainty: Certainty = Certainty.EXACT

    @property
    def exact(self) -> bool:
        return self.certainty is Certainty.EXACT

    def to_dict(self) -> dict:
        return {'alpha': self.alpha, 'beta': self.beta, 'certainty': self.certainty.value}


def _range_on_spectrum(g: Callable[[np.ndarray], np.ndarray], spec: SpectrumSpec,
                       turning_point: float | None = None,
                       limit: float | None = None) -> tuple[float, float, bool]:
    """
    Exact (inf, sup, inf_is_limit) of g over sigma(A)

    Valid when g has at most one interior turning point: the extrema are
    then found among s0, the largest point (or the limit at infinity) and
    the spectrum points bracketing the turning point.
    """
    candidates = [spec.s0]
    if spec.bounded:
        candidates.append(spec.s_max)
    if turning_point is not None and spec.s0 < turning_point < spec.s_max:
        candidates.extend(bracket(spec, turning_point))
    values = [float(value) for value in g(np.asarray(candidates, dtype=float))]
    lowest, highest = min(values), max(values)

    inf_is_limit = False
    if not spec.bounded and limit is not None:
        if limit < lowest:
            lowest, inf_is_limit = limit, True
        highest = max(highest, limit)
    return lowest, highest, inf_is_limit


def _power_limit(exponent: float) -> float:
    if exponent > 0:
        return math.inf
    return 1.0 if exponent == 0 else 0.0


def _power_range(exponent: float, spec: SpectrumSpec, scale: float = 1.0) -> tuple[float, float, bool]:
    lowest, highest, is_limit = _range_on_spectrum(
        lambda s: s ** exponent, spec, limit=_power_limit(exponent))
    return scale * lowest, scale * highest, is_limit


def _rotational_extremes(f: DampingFunction, spec: SpectrumSpec) -> DampingExtremes:
    theta, omega = f.theta, f.omega

    def s_of(root: float) -> float:
        return root ** 2 / (1.0 + omega * root)

    # f = l^theta / (1 + omega l): single maximum for 0 < theta < 1
    turning = s_of(theta / (omega * (1.0 - theta))) if 0 < theta < 1 else None
    f_limit = 0.0 if theta < 1 else (1.0 / omega if theta == 1 else math.inf)
    inf_f, _, inf_is_limit = _range_on_spectrum(f.evaluate, spec, turning, f_limit)

    # f/s = l^(theta - 2): monotone
    _, sup_ratio, _ = _range_on_spectrum(
        lambda s: rotational_root(s, omega) ** (theta - 2.0), spec, limit=_power_limit(theta - 2.0))

    # f/sqrt(s) = l^(theta - 1) / sqrt(1 + omega l): single maximum for 1 < theta < 3/2
    turning = s_of((theta - 1.0) / (omega * (1.5 - theta))) if 1 < theta < 1.5 else None
    root_limit = 0.0 if theta < 1.5 else (omega ** -0.5 if theta == 1.5 else math.inf)
    _, sup_root, _ = _range_on_spectrum(
        lambda s: f.evaluate(s) / np.sqrt(s), spec, turning, root_limit)

    return DampingExtremes(inf_f, sup_ratio, sup_root,
                           Certainty.EXACT, Certainty.EXACT, Certainty.EXACT, inf_is_limit)


def _tabulated_points(f: DampingFunction, spec: SpectrumSpec, budget: int) -> np.ndarray:
    points = [s for s in sample_modes(spec, budget) if f.covers(s)]
    last_knot = f.knots[-1][0]
    if spec.is_discrete:
        if f.covers(spec.s0):
            points.extend(eigenvalues_up_to(spec, min(last_knot, spec.s_max))[:budget])
    else:
        points.extend(s for s, _ in f.knots if spec.contains(s))
        points.extend(bound for interval in spec.intervals for bound in (interval.lower, interval.upper)
                      if math.isfinite(bound) and f.covers(bound))
    return np.unique(np.asarray(points, dtype=float))


def _tabulated_extremes(f: DampingFunction, spec: SpectrumSpec, budget: int) -> DampingExtremes:
    points = _tabulated_points(f, spec, budget)
    if points.size == 0:
        logger.warning('tabulated damping covers no sampled spectrum point')
        return DampingExtremes(0.0, 0.0, 0.0, Certainty.SAMPLED, Certainty.SAMPLED, Certainty.SAMPLED)

    values = f.evaluate(points)
    inf_f = float(values.min())
    sup_ratio = float((values / points).max())
    sup_root = float((values / np.sqrt(points)).max())

    covers_bottom = f.covers(spec.s0)
    if spec.bounded and covers_bottom and f.covers(spec.s_max):
        exact = Certainty.EXACT if spec.is_discrete and points.size >= spec.mode_count else Certainty.CERTIFIED
        # piecewise-linear f: min f and max f/s sit at knots or endpoints
        return DampingExtremes(inf_f, sup_ratio, sup_root, exact, exact, Certainty.CERTIFIED)

    tail = f.tail
    if spec.bounded or tail is None or tail.coefficient == 0 or not covers_bottom:
        logger.warning('tabulated damping without usable tail metadata: asymptotic quantities are sampled only')
        return DampingExtremes(inf_f, sup_ratio, sup_root,
                               Certainty.SAMPLED, Certainty.SAMPLED, Certainty.SAMPLED)

    p, c = tail.power, tail.coefficient
    if p < 0:
        inf_f, inf_certainty, inf_is_limit = 0.0, Certainty.EXACT, True
    else:
        inf_f = min(inf_f, c) if p == 0 else inf_f
        inf_certainty, inf_is_limit = Certainty.CERTIFIED, False

    if p > 1:
        sup_ratio, ratio_certainty = math.inf, Certainty.EXACT
    else:
        sup_ratio = max(sup_ratio, c) if p == 1 else sup_ratio
        ratio_certainty = Certainty.CERTIFIED

    if p > 0.5:
        sup_root, root_certainty = math.inf, Certainty.EXACT
    else:
        sup_root = max(sup_root, c) if p == 0.5 else sup_root
        root_certainty = Certainty.CERTIFIED

    return DampingExtremes(inf_f, sup_ratio, sup_root,
                           inf_certainty, ratio_certainty, root_certainty, inf_is_limit)


def extremes(f: DampingFunction, spec: SpectrumSpec, budget: int = DEFAULT_BUDGET) -> DampingExtremes:
    """
    inf f, sup f/s and sup f/sqrt(s) over sigma(A)

    Parametric families are handled in closed form through the monotonicity
    of s^a and of the rotational-inertia expressions; tabulated damping is
    sampled, with tail metadata certifying the asymptotic conclusions.
    """
    if budget < 1:
        raise InvalidParameter('sample budget must be at least 1')
    family = f.family

    if family is DampingFamily.ZERO or (family is DampingFamily.CONSTANT and f.constant == 0):
        return DampingExtremes(0.0, 0.0, 0.0, Certainty.EXACT, Certainty.EXACT, Certainty.EXACT)

    if family is DampingFamily.CONSTANT:
        _, sup_ratio, _ = _power_range(-1.0, spec, f.constant)
        _, sup_root, _ = _power_range(-0.5, spec, f.constant)
        return DampingExtremes(f.constant, sup_ratio, sup_root,
                               Certainty.EXACT, Certainty.EXACT, Certainty.EXACT)

    if family is DampingFamily.POWER:
        inf_f, _, inf_is_limit = _power_range(f.theta, spec)
        _, sup_ratio, _ = _power_range(f.theta - 1.0, spec)
        _, sup_root, _ = _power_range(f.theta - 0.5, spec)
        return DampingExtremes(inf_f, sup_ratio, sup_root,
                               Certainty.EXACT, Certainty.EXACT, Certainty.EXACT, inf_is_limit)

    if family is DampingFamily.ROTATIONAL_INERTIA:
        return _rotational_extremes(f, spec)

    return _tabulated_extremes(f, spec, budget)


def rate_exponents(f: DampingFunction, spec: SpectrumSpec) -> RateExponents:
    """
    Polynomial weights alpha (inf s^alpha f > 0) and beta (sup s^beta f < inf)

    Both are absent on bounded spectra and whenever inf f > 0.
    """
    if spec.bounded:
        return RateExponents(None, None)

    if f.family is DampingFamily.POWER and f.theta < 0:
        return RateExponents(-f.theta, -f.theta)

    if f.family is DampingFamily.ROTATIONAL_INERTIA and f.theta < 1:
        # f(s) ~ omega^(theta - 2) s^(theta - 1)
        return RateExponents(1.0 - f.theta, 1.0 - f.theta)

    if f.family is DampingFamily.TABULATED and f.tail is not None:
        p, c = f.tail.power, f.tail.coefficient
        if p < 0 and c > 0:
            zeros = zero_set(spec, f)
            alpha = -p if zeros.is_empty else None
            return RateExponents(alpha, -p, Certainty.CERTIFIED)

    return RateExponents(None, None)


def lambda_limit_set(f: DampingFunction, spec: SpectrumSpec) -> frozenset[float]:
    """
    Limits of f(s_n)/s_n along spectrum points s_n -> inf (positive ones only)

    Tabulated damping without tail metadata yields the empty set with a
    warning: finite data cannot certify subsequential limits.
    """
    if spec.bounded:
        return frozenset()

    if f.family is DampingFamily.POWER and f.theta == 1:
        return frozenset({1.0})
    if f.family is DampingFamily.ROTATIONAL_INERTIA and f.theta == 2:
        return frozenset({1.0})

    if f.family is DampingFamily.TABULATED:
        if f.tail is None:
            logger.warning('limit set of f(s)/s refused: tabulated damping has no tail metadata')
            return frozenset()
        if f.tail.power == 1 and f.tail.coefficient > 0:
            return frozenset({f.tail.coefficient})

    return frozenset()


@dataclass(frozen=True)
class TailLimits:
    """Limits of f, f/sqrt(s) and f/s as s -> inf"""
    f: float
    f_over_sqrt_s: float
    f_over_s: float


def tail_limits(f: DampingFunction) -> TailLimits | None:
    """Asymptotic limits per family; None for tabulated damping without tail"""
    family = f.family
    if family is DampingFamily.ZERO:
        return TailLimits(0.0, 0.0, 0.0)
    if family is DampingFamily.CONSTANT:
        return TailLimits(f.constant, 0.0, 0.0)
    if family is DampingFamily.POWER:
        return TailLimits(_power_limit(f.theta), _power_limit(f.theta - 0.5), _power_limit(f.theta - 1.0))

    if family is DampingFamily.ROTATIONAL_INERTIA:
        theta, omega = f.theta, f.omega
        # the root l grows like omega * s
        limit_f = 0.0 if theta < 1 else (1.0 / omega if theta == 1 else math.inf)
        limit_root = 0.0 if theta < 1.5 else (omega ** -0.5 if theta == 1.5 else math.inf)
        return TailLimits(limit_f, limit_root, _power_limit(theta - 2.0))

    if f.tail is None:
        return None
    p, c = f.tail.power, f.tail.coefficient
    if c == 0:
        return TailLimits(0.0, 0.0, 0.0)
    return TailLimits(c * _power_limit(p), c * _power_limit(p - 0.5), c * _power_limit(p - 1.0))
