"""
Spectrum of the elastic operator A

A spectrum is either a discrete eigenvalue sequence (an explicit sorted
prefix, optionally continued by a closed-form tail) or a finite union of
closed intervals in (0, inf), at most one of them unbounded.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Any, Mapping, Sequence

import numpy as np

from dampinglab.errors.exceptions import EmptySpectrum, InvalidParameter, NonPositivePoint

if TYPE_CHECKING:
    from dampinglab.analysis.damping import DampingFunction

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 200
DEFAULT_ZERO_TOLERANCE = 1e-12
DEFAULT_SAMPLING_CAP = 1e4

# Upper bound on enumerated tail indices (exact scans over a knot range)
MAX_ENUMERATED_MODES = 1_000_000


class SpectrumKind(str, Enum):
    DISCRETE = 'discrete'
    CONTINUOUS = 'continuous'


class TailForm(str, Enum):
    SQUARE = 'square'            # n^2
    FOURTH = 'fourth'            # n^4
    ROTATIONAL = 'rotational'    # n^4 / (1 + omega n^2)
    POWER = 'power'              # c n^p


@dataclass(frozen=True)
class TailFormula:
    """Closed-form continuation of a discrete spectrum"""
    form: TailForm
    start_index: int = 1
    omega: float = 0.0
    coefficient: float = 1.0
    power: float = 2.0

    def __post_init__(self):
        if self.start_index < 1:
            raise InvalidParameter('tail start index must be at least 1')
        if self.form is TailForm.ROTATIONAL and not self.omega >= 0:
            raise InvalidParameter('rotational tail needs omega >= 0')
        if self.form is TailForm.POWER and not (self.coefficient > 0 and self.power > 0):
            raise InvalidParameter('power-law tail needs c > 0 and p > 0')

    def values(self, indices) -> np.ndarray:
        """Tail values at the given indices n (not offsets)"""
        n = np.asarray(indices, dtype=float)
        if self.form is TailForm.SQUARE:
            return n ** 2
        if self.form is TailForm.FOURTH:
            return n ** 4
        if self.form is TailForm.ROTATIONAL:
            return n ** 4 / (1.0 + self.omega * n ** 2)
        return self.coefficient * n ** self.power

    def generate(self, count: int, offset: int = 0) -> np.ndarray:
        """The `count` terms following the first `offset` terms"""
        indices = np.arange(self.start_index + offset, self.start_index + offset + count)
        return self.values(indices)

    def index_above(self, x: float) -> int:
        """Offset of the first term strictly greater than x"""
        if float(self.values(self.start_index)) > x:
            return 0
        low, high = 0, 1
        while float(self.values(self.start_index + high)) <= x:
            low, high = high, high * 2
        while high - low > 1:
            middle = (low + high) // 2
            if float(self.values(self.start_index + middle)) <= x:
                low = middle
            else:
                high = middle
        return high


@dataclass(frozen=True)
class Interval:
    lower: float
    upper: float = math.inf

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.upper)

    def contains(self, x: float, rtol: float = 0.0) -> bool:
        slack = rtol * max(1.0, abs(x))
        return self.lower - slack <= x <= self.upper + slack

    def describe(self) -> str:
        upper = 'inf' if not self.bounded else f'{self.upper:g}'
        return f'[{self.lower:g}, {upper}]'


@dataclass(frozen=True)
class SamplingPolicy:
    """How continuous spectra are turned into finite mode sets"""
    cap: float = DEFAULT_SAMPLING_CAP
    # points each nondegenerate interval gets before any is refined
    per_interval_minimum: int = 2

    def __post_init__(self):
        if not self.cap > 0:
            raise InvalidParameter('sampling cap must be positive')
        if self.per_interval_minimum < 1:
            raise InvalidParameter('every interval needs at least one sample')


@dataclass(frozen=True)
class SpectrumSpec:
    kind: SpectrumKind
    s0: float
    bounded: bool
    eigenvalues: tuple[float, ...] = ()
    tail: TailFormula | None = None
    intervals: tuple[Interval, ...] = ()

    @property
    def is_discrete(self) -> bool:
        return self.kind is SpectrumKind.DISCRETE

    @property
    def s_max(self) -> float:
        """Largest spectrum point (inf when A is unbounded)"""
        if not self.bounded:
            return math.inf
        if self.is_discrete:
            return self.eigenvalues[-1]
        return self.intervals[-1].upper

    @property
    def mode_count(self) -> float:
        """Number of eigenvalues (inf for tails and continuous spectra)"""
        if self.is_discrete and self.tail is None:
            return len(self.eigenvalues)
        return math.inf

    def contains(self, x: float, rtol: float = 1e-12) -> bool:
        if self.is_discrete:
            return any(math.isclose(x, s, rel_tol=rtol) for s in bracket(self, x))
        return any(interval.contains(x, rtol) for interval in self.intervals)

    def describe(self) -> dict:
        description = {
            'kind': self.kind.value,
            's0': self.s0,
            'bounded': self.bounded,
        }
        if self.is_discrete:
            description['eigenvalues'] = list(self.eigenvalues)
            if self.tail is not None:
                description['tail'] = self.tail.form.value
                description['tail_start'] = self.tail.start_index
        else:
            description['intervals'] = [interval.describe() for interval in self.intervals]
        return description


@dataclass(frozen=True)
class ZeroSetReport:
    """The zero-set of f on the spectrum"""
    points: tuple[float, ...]
    is_empty: bool | None
    countable: bool | None
    has_positive_measure: bool | None
    intervals: tuple[Interval, ...] = ()
    whole_spectrum: bool = False
    exact: bool = True
    approximate_points: tuple[float, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            'points': list(self.points),
            'intervals': [interval.describe() for interval in self.intervals],
            'is_empty': self.is_empty,
            'countable': self.countable,
            'has_positive_measure': self.has_positive_measure,
            'whole_spectrum': self.whole_spectrum,
            'exact': self.exact,
        }


def _parse_number_list(raw: Any) -> list[float]:
    if raw is None:
        return []
    if isinstance(raw, str):
        items = [item for item in raw.replace(';', ',').split(',') if item.strip()]
        try:
            return [float(item) for item in items]
        except ValueError as error:
            raise InvalidParameter(f'not a number list: {raw!r}') from error
    return [float(item) for item in raw]


def _parse_intervals(raw: Any) -> list[Interval]:
    if raw is None:
        return []
    if isinstance(raw, str):
        pairs = []
        for chunk in raw.split(','):
            if not chunk.strip():
                continue
            bounds = chunk.strip().strip('[]').split(':')
            if len(bounds) != 2:
                raise InvalidParameter(f'interval must look like lower:upper, got {chunk!r}')
            pairs.append(bounds)
        raw = pairs
    intervals = []
    for lower, upper in raw:
        lower = float(lower)
        upper = math.inf if str(upper).strip().lower() in ('inf', 'infinity', '') else float(upper)
        if upper < lower:
            raise InvalidParameter(f'interval upper bound {upper} below lower bound {lower}')
        intervals.append(Interval(lower, upper))
    return intervals


def _merge_intervals(intervals: Sequence[Interval]) -> tuple[Interval, ...]:
    merged: list[Interval] = []
    for interval in sorted(intervals, key=lambda item: (item.lower, item.upper)):
        if merged and interval.lower <= merged[-1].upper:
            last = merged.pop()
            interval = Interval(last.lower, max(last.upper, interval.upper))
        merged.append(interval)
    return tuple(merged)


def _tail_from_mapping(description: Mapping[str, Any]) -> TailFormula | None:
    form = description.get('tail')
    if form in (None, '', 'none'):
        return None
    if isinstance(form, TailFormula):
        return form
    try:
        form = TailForm(str(form).strip().lower())
    except ValueError as error:
        raise InvalidParameter(f'unknown tail form {form!r}') from error
    return TailFormula(
        form=form,
        start_index=int(description.get('tail_start', 1)),
        omega=float(description.get('tail_omega', description.get('omega', 0.0))),
        coefficient=float(description.get('tail_coefficient', 1.0)),
        power=float(description.get('tail_power', 2.0)),
    )


def make_spectrum(description: Any) -> SpectrumSpec:
    """
    Build a validated SpectrumSpec

    Args:
        description: A SpectrumSpec, an object with a `spectrum` attribute
            (model preset), or a mapping with keys kind, eigenvalues, tail,
            tail_start, tail_omega, tail_coefficient, tail_power, intervals

    Returns:
        SpectrumSpec with s0 and boundedness computed

    Raises:
        NonPositivePoint: a point or interval bound is <= 0
        EmptySpectrum: nothing to describe
    """
    if isinstance(description, SpectrumSpec):
        return description
    if hasattr(description, 'spectrum'):
        return make_spectrum(description.spectrum)
    if not isinstance(description, Mapping):
        raise InvalidParameter(f'cannot build a spectrum from {type(description).__name__}')

    intervals = _parse_intervals(description.get('intervals'))
    kind = description.get('kind') or ('continuous' if intervals else 'discrete')
    try:
        kind = SpectrumKind(str(getattr(kind, 'value', kind)).strip().lower())
    except ValueError as error:
        raise InvalidParameter(f'unknown spectrum kind {kind!r}') from error

    if kind is SpectrumKind.CONTINUOUS:
        if not intervals:
            raise EmptySpectrum('continuous spectrum without intervals')
        for interval in intervals:
            if interval.lower <= 0:
                raise NonPositivePoint(f'interval {interval.describe()} reaches s <= 0')
        merged = _merge_intervals(intervals)
        return SpectrumSpec(
            kind=kind,
            s0=merged[0].lower,
            bounded=all(interval.bounded for interval in merged),
            intervals=merged,
        )

    eigenvalues = _parse_number_list(description.get('eigenvalues'))
    tail = _tail_from_mapping(description)
    if not eigenvalues and tail is None:
        raise EmptySpectrum('discrete spectrum without eigenvalues or tail')

    bad = [value for value in eigenvalues if not value > 0]
    if bad:
        raise NonPositivePoint(f'eigenvalues must be positive, got {bad[0]}')

    eigenvalues = sorted(set(eigenvalues))
    if tail is not None:
        first = float(tail.values(tail.start_index))
        if not first > 0:
            raise NonPositivePoint(f'tail starts at {first}')
        if eigenvalues and first <= eigenvalues[-1]:
            raise InvalidParameter('tail must start above the explicit eigenvalues')
        s0 = eigenvalues[0] if eigenvalues else first
    else:
        s0 = eigenvalues[0]

    return SpectrumSpec(
        kind=kind,
        s0=s0,
        bounded=tail is None,
        eigenvalues=tuple(eigenvalues),
        tail=tail,
    )


def _discrete_prefix(spec: SpectrumSpec, count: int) -> np.ndarray:
    explicit = np.asarray(spec.eigenvalues[:count], dtype=float)
    missing = count - explicit.size
    if missing <= 0 or spec.tail is None:
        return explicit
    return np.concatenate([explicit, spec.tail.generate(missing)])


def eigenvalues_up_to(spec: SpectrumSpec, upper: float) -> np.ndarray:
    """All eigenvalues <= upper (discrete spectra only)"""
    explicit = np.asarray([s for s in spec.eigenvalues if s <= upper], dtype=float)
    if spec.tail is None:
        return explicit
    count = spec.tail.index_above(upper)
    if count > MAX_ENUMERATED_MODES:
        raise InvalidParameter(f'{count} eigenvalues below {upper:g}, too many to enumerate')
    return np.concatenate([explicit, spec.tail.generate(count)])


def _refinement_position(k: int) -> float:
    """k-th point of the nested dyadic order 0, 1, 1/2, 1/4, 3/4, 1/8, ... on [0, 1]"""
    if k < 2:
        return float(k)
    level = (k - 1).bit_length() - 1
    offset = k - 1 - (1 << level)
    return (2 * offset + 1) / (1 << (level + 1))


def _refinement_order(weights: Sequence[float], budget: int, minimum: int) -> list[tuple[int, int]]:
    """
    First `budget` (interval, k) pairs of one fixed order over all intervals

    The first `minimum` points of every interval come first; later points
    are handed out in proportion to the interval weights. The order does
    not depend on the budget, so a larger budget samples a superset.
    """
    keyed = []
    for index, weight in enumerate(weights):
        count = 1 if weight == 0 else budget
        for k in range(count):
            if k < minimum:
                key = (0, k, 0.0, index)
            else:
                key = (1, 0, (k - minimum + 1) / weight, index)
            keyed.append((key, index, k))
    keyed.sort()
    return [(index, k) for _, index, k in keyed[:budget]]


def sample_modes(spec: SpectrumSpec, budget: int, policy: SamplingPolicy | None = None) -> np.ndarray:
    """
    Finite set of spectrum points used in place of sigma(A)

    Discrete spectra give their first `budget` eigenvalues. Continuous
    spectra are refined dyadically in log s on each interval, starting with
    both endpoints of bounded intervals; unbounded intervals are cut at
    policy.cap. Grids are nested: raising the budget only adds points.
    """
    if budget < 1:
        raise InvalidParameter('sample budget must be at least 1')
    policy = policy or SamplingPolicy()

    if spec.is_discrete:
        return _discrete_prefix(spec, budget)

    intervals = list(spec.intervals)
    uppers = [interval.upper if interval.bounded else max(policy.cap, interval.lower)
              for interval in intervals]
    weights = [math.log(upper / interval.lower) for interval, upper in zip(intervals, uppers)]
    needed = sum(1 if weight == 0 else policy.per_interval_minimum for weight in weights)
    if budget < needed:
        logger.warning('budget %d is below the %d points that keep every interval endpoint; '
                       'some endpoints are not sampled', budget, needed)

    points = []
    for index, k in _refinement_order(weights, budget, policy.per_interval_minimum):
        lower, upper = intervals[index].lower, uppers[index]
        position = _refinement_position(k)
        if position == 0.0:
            points.append(lower)
        elif position == 1.0:
            points.append(upper)
        else:
            points.append(lower * (upper / lower) ** position)
    return np.unique(np.asarray(points, dtype=float))


def bracket(spec: SpectrumSpec, x: float) -> tuple[float, ...]:
    """
    Spectrum points closest to x from below and from above

    Returns x itself when x lies in a continuous component. Used to locate
    the extremum of unimodal quantities on the spectrum exactly.
    """
    if spec.is_discrete:
        below = max((s for s in spec.eigenvalues if s <= x), default=None)
        above = min((s for s in spec.eigenvalues if s > x), default=None)
        if above is None and spec.tail is not None:
            offset = spec.tail.index_above(x)
            above = float(spec.tail.generate(1, offset)[0])
            if offset > 0:
                below = float(spec.tail.generate(1, offset - 1)[0])
        return tuple(s for s in (below, above) if s is not None)

    candidates = []
    for interval in spec.intervals:
        if interval.contains(x):
            return (x,)
        candidates.append(interval.lower)
        if interval.bounded:
            candidates.append(interval.upper)
    below = [s for s in candidates if s <= x]
    above = [s for s in candidates if s > x]
    return tuple(sorted(set(([max(below)] if below else []) + ([min(above)] if above else []))))


def zero_set(spec: SpectrumSpec, f: 'DampingFunction', tol: float = DEFAULT_ZERO_TOLERANCE,
             budget: int = DEFAULT_BUDGET, policy: SamplingPolicy | None = None) -> ZeroSetReport:
    """
    The set of spectrum points where f vanishes

    Parametric families are decided exactly: they either never vanish on
    (0, inf) or vanish identically. Tabulated damping is scanned on the
    eigenvalues up to its last knot (discrete) or on its knots and the
    sampled grid (continuous); points with f <= tol count as zeros.
    """
    if tol < 0:
        raise InvalidParameter('zero tolerance must be nonnegative')

    if f.strictly_positive:
        return ZeroSetReport(points=(), is_empty=True, countable=True, has_positive_measure=False)

    if f.vanishes_identically:
        points = tuple(float(s) for s in sample_modes(spec, budget, policy))
        return ZeroSetReport(
            points=points,
            is_empty=False,
            countable=spec.is_discrete,
            has_positive_measure=True,
            intervals=spec.intervals,
            whole_spectrum=True,
        )

    if spec.is_discrete:
        return _tabulated_zeros_discrete(spec, f, tol, budget)
    return _tabulated_zeros_continuous(spec, f, tol, budget, policy)


def _tabulated_covers(spec: SpectrumSpec, f: 'DampingFunction') -> bool:
    """Whether f is known on all of sigma(A) and never vanishes past its knots"""
    first_knot, last_knot = f.knots[0][0], f.knots[-1][0]
    tail_positive = f.tail is not None and f.tail.coefficient > 0
    return spec.s0 >= first_knot and (tail_positive or spec.s_max <= last_knot)


def _tabulated_zeros_discrete(spec, f, tol, budget) -> ZeroSetReport:
    covered = _tabulated_covers(spec, f)
    if covered:
        # past the last knot the tail continuation is strictly positive
        candidates = eigenvalues_up_to(spec, f.knots[-1][0])
    else:
        candidates = np.asarray([s for s in sample_modes(spec, budget) if f.covers(s)], dtype=float)

    values = f.evaluate(candidates) if candidates.size else np.empty(0)
    points = tuple(float(s) for s, value in zip(candidates, values) if value <= tol)
    near_zeros = tuple(float(s) for s, value in zip(candidates, values) if 0 < value <= tol)

    if covered:
        return ZeroSetReport(
            points=points,
            is_empty=not points,
            countable=True,
            has_positive_measure=bool(points),
            approximate_points=near_zeros,
        )

    logger.warning('tabulated damping does not cover the spectrum; zero-set is partial')
    return ZeroSetReport(
        points=points,
        is_empty=False if points else None,
        countable=True,
        has_positive_measure=True if points else None,
        exact=False,
        approximate_points=near_zeros,
    )


def _tabulated_zeros_continuous(spec, f, tol, budget, policy) -> ZeroSetReport:
    knots = [(s, value) for s, value in f.knots]
    zero_segments = []
    for (left, f_left), (right, f_right) in zip(knots, knots[1:]):
        if f_left <= tol and f_right <= tol:
            for interval in spec.intervals:
                lower, upper = max(left, interval.lower), min(right, interval.upper)
                if lower < upper:
                    zero_segments.append(Interval(lower, upper))

    samples = [s for s in sample_modes(spec, budget, policy) if f.covers(s)]
    knot_points = [s for s, _ in knots if spec.contains(s) and f.covers(s)]
    endpoints = [bound for interval in spec.intervals for bound in (interval.lower, interval.upper)
                 if math.isfinite(bound) and f.covers(bound)]
    candidates = np.unique(np.asarray(samples + knot_points + endpoints, dtype=float))
    values = f.evaluate(candidates) if candidates.size else np.empty(0)
    points = tuple(float(s) for s, value in zip(candidates, values) if value <= tol)

    if zero_segments:
        return ZeroSetReport(
            points=points,
            is_empty=False,
            countable=False,
            has_positive_measure=True,
            intervals=_merge_intervals(zero_segments),
            exact=False,
            approximate_points=points,
        )

    covered = _tabulated_covers(spec, f)
    if not points and covered:
        # a nonnegative piecewise-linear f positive at every knot and endpoint never vanishes
        return ZeroSetReport(points=(), is_empty=True, countable=True, has_positive_measure=False)

    if not covered:
        logger.warning('tabulated damping does not cover the spectrum; zero-set is partial')
    return ZeroSetReport(
        points=points,
        is_empty=False if points else None,
        countable=None,
        has_positive_measure=None,
        exact=False,
        approximate_points=points,
    )
