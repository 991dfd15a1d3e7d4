"""
Spectrum of the generator

Every s in sigma(A) contributes the two roots of xi^2 + f(s) xi + s = 0;
limits l of f(s)/s along s -> inf contribute the real points -1/l, and 0
belongs to the spectrum exactly when the generator fails to be onto.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

import numpy as np

from dampinglab.analysis.damping import (
    DampingFunction,
    covered_modes,
    covers_spectrum,
    extremes,
    lambda_limit_set,
    tail_limits,
)
from dampinglab.analysis.spectrum_model import (
    DEFAULT_BUDGET,
    Interval,
    SpectrumSpec,
    bracket,
    zero_set,
)

logger = logging.getLogger(__name__)

CRITICAL_RTOL = 1e-12
ON_AXIS_RTOL = 1e-9


class Regime(str, Enum):
    OVERDAMPED = 'overdamped'
    CRITICAL = 'critical'
    UNDERDAMPED = 'underdamped'


class PointLabel(str, Enum):
    XI_PLUS = 'xi_plus'
    XI_MINUS = 'xi_minus'
    LAMBDA_POINT = 'lambda_point'
    ZERO = 'zero'


@dataclass(frozen=True)
class XiPair:
    xi_plus: complex
    xi_minus: complex
    regime: Regime


def xi_roots(s, fs):
    """
    Vectorized roots of xi^2 + fs xi + s = 0

    The larger-magnitude real root is computed first and its partner comes
    from the product xi_plus * xi_minus = s, so nothing cancels when
    fs >> sqrt(s).

    Returns:
        (xi_plus, xi_minus, regime) arrays; regime holds Regime values
    """
    s = np.asarray(s, dtype=float)
    fs = np.asarray(fs, dtype=float)

    with np.errstate(over='ignore', invalid='ignore', divide='ignore'):
        discriminant = fs * fs - 4.0 * s
        band = CRITICAL_RTOL * np.maximum(fs * fs, 4.0 * s)
        critical = np.abs(discriminant) <= band
        over = (discriminant > 0) & ~critical
        root = np.sqrt(np.abs(discriminant))

        far = -(fs + root) / 2.0
        near = s / far
        real = -fs / 2.0

        xi_plus = np.where(over, near, real) + 1j * np.where(over | critical, 0.0, root / 2.0)
        xi_minus = np.where(over, far, real) - 1j * np.where(over | critical, 0.0, root / 2.0)

    regime = np.where(over, Regime.OVERDAMPED.value,
                      np.where(critical, Regime.CRITICAL.value, Regime.UNDERDAMPED.value))
    return xi_plus, xi_minus, regime


def xi_pair(s: float, fs: float) -> XiPair:
    """Roots of xi^2 + fs xi + s = 0 with their damping regime"""
    xi_plus, xi_minus, regime = xi_roots(s, fs)
    return XiPair(complex(xi_plus), complex(xi_minus), Regime(str(regime)))


def is_bijective(f: DampingFunction, spec: SpectrumSpec) -> bool | None:
    """Whether 0 lies outside the generator spectrum (sup f/s < inf)"""
    if spec.bounded:
        return True
    return extremes(f, spec).sup_ratio_finite


@dataclass(frozen=True)
class SpectralPoint:
    value: complex
    label: PointLabel
    source: float
    eigenvalue: bool
    regime: Regime | None = None


@dataclass(frozen=True)
class GeneratorPortrait:
    points: tuple[SpectralPoint, ...]
    contains_zero: bool | None
    spectral_bound: float
    bound_exact: bool
    sampled: bool
    warnings: tuple[str, ...] = field(default=())

    def rows(self) -> Iterator[tuple]:
        """CSV rows: s_or_ell, label, re, im, eigenvalue_flag, regime"""
        for point in self.points:
            yield (point.source, point.label.value, point.value.real, point.value.imag,
                   point.eigenvalue, point.regime.value if point.regime else '')

    def to_dict(self) -> dict:
        counts: dict[str, int] = {}
        for point in self.points:
            counts[point.label.value] = counts.get(point.label.value, 0) + 1
        return {
            'points': counts,
            'contains_zero': self.contains_zero,
            'spectral_bound': self.spectral_bound,
            'bound_exact': self.bound_exact,
            'sampled': self.sampled,
            'warnings': list(self.warnings),
        }


def _tail_real_part(f: DampingFunction) -> float | None:
    """Limit of Re xi_plus(s) as s -> inf"""
    limits = tail_limits(f)
    if limits is None:
        return None
    if limits.f_over_sqrt_s == 0:
        return -limits.f / 2.0
    if limits.f_over_s == math.inf:
        return 0.0
    if 0 < limits.f_over_s < math.inf:
        return -1.0 / limits.f_over_s
    return -math.inf


def portrait(f: DampingFunction, spec: SpectrumSpec, budget: int = DEFAULT_BUDGET) -> GeneratorPortrait:
    """
    Sampled picture of sigma(generator)

    Discrete spectra give eigenvalues of the generator. For continuous
    spectra the points sample the curves traced by the roots, so the
    portrait is an approximation of the set and is flagged as such.
    """
    s = covered_modes(f, spec, budget, allow_empty=True)
    fs = f.evaluate(s)
    xi_plus, xi_minus, regime = xi_roots(s, fs)
    eigen = spec.is_discrete
    warnings: list[str] = []
    partial = not covers_spectrum(f, spec)
    if partial:
        warnings.append('damping unknown on part of the spectrum: portrait restricted to the tabulated range')

    points: list[SpectralPoint] = []
    for index in range(s.size):
        mode_regime = Regime(str(regime[index]))
        source = float(s[index])
        points.append(SpectralPoint(complex(xi_plus[index]), PointLabel.XI_PLUS, source, eigen, mode_regime))
        points.append(SpectralPoint(complex(xi_minus[index]), PointLabel.XI_MINUS, source, eigen, mode_regime))

    limits = sorted(lambda_limit_set(f, spec))
    for ell in limits:
        points.append(SpectralPoint(complex(-1.0 / ell, 0.0), PointLabel.LAMBDA_POINT, ell, False))

    contains_zero = None if (bijective := is_bijective(f, spec)) is None else not bijective
    if contains_zero:
        points.append(SpectralPoint(0j, PointLabel.ZERO, math.inf, False))

    sampled_bound = float(np.max(xi_plus.real)) if s.size else -math.inf
    candidates = [sampled_bound] + [-1.0 / ell for ell in limits]
    bound_exact = spec.is_discrete and spec.bounded and s.size >= spec.mode_count

    if not spec.bounded:
        tail = _tail_real_part(f)
        if tail is None:
            warnings.append('tail of the damping unknown: spectral bound sampled only')
        else:
            candidates.append(tail)
            at_bottom = s.size > 0 and float(xi_plus.real[0]) >= sampled_bound
            bound_exact = f.is_parametric and (at_bottom or tail >= sampled_bound)
    elif not bound_exact:
        bound_exact = f.is_parametric and s.size > 0 and float(xi_plus.real[0]) >= sampled_bound

    zeros = zero_set(spec, f, budget=budget)
    if contains_zero or zeros.is_empty is False or (partial and s.size == 0):
        candidates.append(0.0)
    if partial:
        bound_exact = False

    spectral_bound = min(max(candidates), 0.0)
    if not bound_exact:
        logger.info('spectral bound %.6g is a sampled estimate', spectral_bound)

    return GeneratorPortrait(tuple(points), contains_zero, spectral_bound, bound_exact,
                             not spec.is_discrete, tuple(warnings))


@dataclass(frozen=True)
class ImaginarySpectrum:
    """Nonzero points i*lambda of the generator spectrum, by their lambda"""
    points: tuple[float, ...]
    intervals: tuple[Interval, ...]
    is_empty: bool | None
    whole_spectrum: bool = False
    exact: bool = True
    spec: SpectrumSpec | None = None

    def contains(self, lam: float, rtol: float = ON_AXIS_RTOL) -> bool:
        magnitude = abs(lam)
        if magnitude == 0:
            return False

        def close(root: float) -> bool:
            return abs(magnitude - root) <= rtol * (1.0 + root)

        if any(close(abs(point)) for point in self.points):
            return True
        if any(close(math.sqrt(interval.lower)) or (interval.bounded and close(math.sqrt(interval.upper)))
               or interval.contains(magnitude ** 2) for interval in self.intervals):
            return True
        if self.whole_spectrum and self.spec is not None:
            return any(close(math.sqrt(s)) for s in bracket(self.spec, magnitude ** 2))
        return False

    def to_dict(self) -> dict:
        return {
            'points': list(self.points),
            'intervals': [f'±[{math.sqrt(i.lower):g}, {math.sqrt(i.upper):g}]' for i in self.intervals],
            'is_empty': self.is_empty,
            'whole_spectrum': self.whole_spectrum,
            'exact': self.exact,
        }


def imaginary_spectrum(f: DampingFunction, spec: SpectrumSpec,
                       budget: int = DEFAULT_BUDGET) -> ImaginarySpectrum:
    """The lambda with i*lambda in sigma(generator) minus {0}: plus/minus sqrt of the zero-set"""
    zeros = zero_set(spec, f, budget=budget)
    roots = sorted({math.sqrt(s) for s in zeros.points})
    points = tuple([-root for root in reversed(roots)] + roots)
    return ImaginarySpectrum(
        points=points,
        intervals=zeros.intervals,
        is_empty=zeros.is_empty,
        whole_spectrum=zeros.whole_spectrum,
        exact=zeros.exact,
        spec=spec,
    )


def regime_summary(f: DampingFunction, spec: SpectrumSpec, budget: int = DEFAULT_BUDGET) -> dict:
    """How many sampled modes are over-, critically and underdamped"""
    s = covered_modes(f, spec, budget, allow_empty=True)
    _, _, regime = xi_roots(s, f.evaluate(s))
    summary = {item.value: int(np.count_nonzero(regime == item.value)) for item in Regime}
    summary['modes'] = int(s.size)
    return summary
