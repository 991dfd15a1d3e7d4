"""
Stability classification

Decides, from the zero-set of f and the two extremal quantities inf f and
sup f/s, whether the damped system is not stable, stable, semiuniformly
stable or exponentially stable, and attaches the polynomial rates.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Iterable

from dampinglab.analysis.damping import (
    DampingFunction,
    RateExponents,
    extremes,
    rate_exponents,
)
from dampinglab.analysis.generator_spectrum import portrait
from dampinglab.analysis.models import build_preset
from dampinglab.analysis.spectrum_model import DEFAULT_BUDGET, SpectrumSpec, zero_set

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    NOT_STABLE = 'NotStable'
    STABLE_ONLY = 'StableOnly'
    SEMIUNIFORM = 'Semiuniform'
    EXPONENTIAL = 'Exponential'
    UNKNOWN = 'Unknown'

    @property
    def rank(self) -> int:
        """Position in the stability order; Unknown ranks below everything"""
        return {
            Verdict.UNKNOWN: -1,
            Verdict.NOT_STABLE: 0,
            Verdict.STABLE_ONLY: 1,
            Verdict.SEMIUNIFORM: 2,
            Verdict.EXPONENTIAL: 3,
        }[self]

    def at_least(self, other: 'Verdict') -> bool:
        return self.rank >= other.rank


@dataclass(frozen=True)
class Conditions:
    inf_f_positive: bool | None
    sup_ratio_finite: bool | None
    zero_set_empty: bool | None
    zero_set_countable: bool | None
    zero_set_null_measure: bool | None

    def to_dict(self) -> dict:
        return {
            'inf_f_positive': self.inf_f_positive,
            'sup_ratio_finite': self.sup_ratio_finite,
            'zero_set_empty': self.zero_set_empty,
            'zero_set_countable': self.zero_set_countable,
            'zero_set_null_measure': self.zero_set_null_measure,
        }


@dataclass(frozen=True)
class Rates:
    """Polynomial decay t^lower_exponent <= psi(t) <= t^upper_exponent (orders, not constants)"""
    alpha: float | None
    beta: float | None

    @property
    def optimal(self) -> bool:
        return self.alpha is not None and self.alpha == self.beta

    @property
    def lower_exponent(self) -> float | None:
        # decay at least as fast as t^(-1/(2 alpha))
        return None if self.alpha is None else -1.0 / (2.0 * self.alpha)

    @property
    def upper_exponent(self) -> float | None:
        return None if self.beta is None else -1.0 / (2.0 * self.beta)

    @classmethod
    def from_exponents(cls, exponents: RateExponents) -> 'Rates | None':
        if exponents.alpha is None and exponents.beta is None:
            return None
        return cls(exponents.alpha, exponents.beta)

    def to_dict(self) -> dict:
        def power(exponent):
            return None if exponent is None else f't^({exponent:g})'

        return {
            'alpha': self.alpha,
            'beta': self.beta,
            'rate_lower': power(self.lower_exponent),
            'rate_upper': power(self.upper_exponent),
            'optimal': self.optimal,
        }


@dataclass(frozen=True)
class Reason:
    condition: str
    tag: str

    def to_dict(self) -> dict:
        return {'condition': self.condition, 'tag': self.tag}


@dataclass(frozen=True)
class StabilityReport:
    verdict: Verdict
    conditions: Conditions
    rates: Rates | None
    spectral_bound: float
    reasons: tuple[Reason, ...]
    conservative: bool = False
    bounded: bool = False
    notes: tuple[str, ...] = field(default=())

    @property
    def growth_bound(self) -> float | None:
        """Exponential growth rate of the semigroup, known to vanish off the exponential class"""
        if self.verdict is Verdict.EXPONENTIAL or self.verdict is Verdict.UNKNOWN:
            return None
        return 0.0

    def to_dict(self) -> dict:
        return {
            'verdict': self.verdict.value,
            'conditions': self.conditions.to_dict(),
            'rates': self.rates.to_dict() if self.rates else None,
            'spectral_bound': self.spectral_bound,
            'reasons': [reason.to_dict() for reason in self.reasons],
            'conservative': self.conservative,
            'growth_bound': {
                'chain': 'spectral_bound <= growth_bound <= 0',
                'value': self.growth_bound,
            },
            'notes': list(self.notes),
        }


def classify(f: DampingFunction, spec: SpectrumSpec, budget: int = DEFAULT_BUDGET) -> StabilityReport:
    """
    Strongest provable stability class of the damped system

    Ladder: positive spectral measure of the zero-set -> NotStable;
    inf f > 0 and sup f/s < inf -> Exponential; empty zero-set and
    sup f/s < inf -> Semiuniform; countable null zero-set -> StableOnly;
    anything else -> Unknown. Conditions known only from samples stay
    unknown and never flip a verdict.
    """
    bounds = extremes(f, spec, budget)
    zeros = zero_set(spec, f, budget=budget)
    bound = portrait(f, spec, budget).spectral_bound

    inf_positive = bounds.inf_positive
    ratio_finite = True if spec.bounded else bounds.sup_ratio_finite
    null_measure = None if zeros.has_positive_measure is None else not zeros.has_positive_measure
    notes: list[str] = []
    if not spec.is_discrete:
        notes.append('continuous spectrum: portrait and bounds are sampled approximations')

    def report(verdict: Verdict, reasons: Iterable[Reason], rates: Rates | None = None,
               inf_override: bool | None = None) -> StabilityReport:
        conditions = Conditions(
            inf_f_positive=inf_positive if inf_override is None else inf_override,
            sup_ratio_finite=ratio_finite,
            zero_set_empty=zeros.is_empty,
            zero_set_countable=zeros.countable,
            zero_set_null_measure=null_measure,
        )
        logger.debug('classified %s on %s as %s', f.describe(), spec.kind.value, verdict.value)
        return StabilityReport(verdict, conditions, rates, bound, tuple(reasons),
                               conservative=zeros.whole_spectrum, bounded=spec.bounded,
                               notes=tuple(notes))

    if zeros.has_positive_measure:
        return report(Verdict.NOT_STABLE, [
            Reason('spectral measure of the zero-set is positive', 'constant-energy-solutions'),
        ])

    if inf_positive and ratio_finite:
        reasons = [
            Reason('inf f > 0', 'exponential-stability-criterion'),
            Reason('sup f/s < inf', 'exponential-stability-criterion'),
        ]
        return report(Verdict.EXPONENTIAL, reasons)

    if zeros.is_empty and ratio_finite:
        if spec.bounded:
            notes.append('bounded spectrum: semiuniform and exponential stability coincide')
            reasons = [
                Reason('zero-set empty on a bounded spectrum', 'bounded-operator-collapse'),
                Reason('sup f/s < inf', 'exponential-stability-criterion'),
            ]
            return report(Verdict.EXPONENTIAL, reasons, inf_override=True)

        rates = Rates.from_exponents(rate_exponents(f, spec))
        reasons = [
            Reason('zero-set empty', 'batty'),
            Reason('sup f/s < inf', 'batty'),
        ]
        if rates is not None and rates.optimal:
            reasons.append(Reason('alpha = beta', 'borichev-tomilov'))
        return report(Verdict.SEMIUNIFORM, reasons, rates)

    if ratio_finite is None:
        return report(Verdict.UNKNOWN, [
            Reason('sup f/s not certified by tail metadata', 'sampled-evidence'),
        ])

    if null_measure and zeros.countable:
        reasons = [Reason('zero-set countable with null spectral measure', 'arendt-batty-lyubich-vu')]
        if ratio_finite is False:
            reasons.append(Reason('sup f/s = inf: 0 lies in the generator spectrum', 'bijectivity-criterion'))
        if zeros.is_empty is False:
            reasons.append(Reason('zero-set nonempty: imaginary spectrum present', 'batty'))
        return report(Verdict.STABLE_ONLY, reasons)

    return report(Verdict.UNKNOWN, [
        Reason('zero-set uncountable or not certified', 'open-case'),
    ])


@dataclass(frozen=True)
class TableRow:
    parameter: float
    report: StabilityReport

    @property
    def verdict(self) -> Verdict:
        return self.report.verdict

    def as_row(self) -> tuple:
        rates = self.report.rates
        return (
            self.parameter,
            self.verdict.value,
            None if rates is None else rates.alpha,
            None if rates is None else rates.beta,
            self.report.spectral_bound,
        )


TABLE_HEADER = ('parameter', 'verdict', 'alpha', 'beta', 'spectral_bound')


def classification_table(family: str | Callable[[float], Any], grid: Iterable[float],
                         budget: int = DEFAULT_BUDGET, **params) -> list[TableRow]:
    """
    One classification per grid value of the model parameter theta

    Args:
        family: Preset name (wave, beam, beam-rot) or a callable theta -> preset
        grid: Finite parameter grid
        params: Extra preset arguments (omega for beam-rot)
    """
    if isinstance(family, str):
        name = family

        def factory(theta: float):
            return build_preset(name, theta=theta, **params)
    else:
        factory = family

    rows = []
    for theta in grid:
        preset = factory(float(theta))
        rows.append(TableRow(float(theta), classify(preset.damping, preset.spectrum, budget)))
    return rows
