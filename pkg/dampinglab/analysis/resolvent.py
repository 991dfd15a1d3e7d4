"""
Resolvent along the imaginary axis

||(i lambda - A)^-1|| is the largest of the 2x2 modal resolvent norms.
Its polynomial growth exponent, read off the envelope of local maxima,
is matched against the decay exponent of psi(t).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.signal import argrelextrema

from dampinglab.analysis.damping import DampingFunction, covered_modes, covers_spectrum
from dampinglab.analysis.fitting import MIN_FIT_POINTS, PowerFit, fit_power_law
from dampinglab.analysis.generator_spectrum import imaginary_spectrum, is_bijective
from dampinglab.analysis.modal_dynamics import PsiDecay, largest_singular_values, psi_decay
from dampinglab.analysis.spectrum_model import DEFAULT_BUDGET, SpectrumSpec
from dampinglab.analysis.stability import Verdict, classify
from dampinglab.errors.exceptions import InvalidParameter, NotSemiuniform, OnSpectrum

logger = logging.getLogger(__name__)

DEFAULT_LAMBDA_RANGE = (10.0, 1e3)
DEFAULT_GRID_POINTS = 400
CONSISTENCY_TOLERANCE = 0.2
BT_BUDGET = 300


def modal_resolvents(s: np.ndarray, fs: np.ndarray, lam: float) -> np.ndarray:
    """(i lambda - M_s)^-1 for every mode, shape (n, 2, 2)"""
    root = np.sqrt(s)
    determinant = s - lam * lam + 1j * lam * fs
    result = np.empty((s.size, 2, 2), dtype=complex)
    result[:, 0, 0] = (1j * lam + fs) / determinant
    result[:, 0, 1] = root / determinant
    result[:, 1, 0] = -root / determinant
    result[:, 1, 1] = 1j * lam / determinant
    return result


def _modal_norms(s: np.ndarray, fs: np.ndarray, lam: float) -> np.ndarray:
    determinant = s - lam * lam + 1j * lam * fs
    if np.any(determinant == 0):
        raise OnSpectrum(f'i*{lam:g} is an eigenvalue of a sampled mode', details={'lambda': lam})
    return largest_singular_values(modal_resolvents(s, fs, lam))


def _check_off_spectrum(f: DampingFunction, spec: SpectrumSpec, lam: float, budget: int) -> None:
    if lam == 0:
        if is_bijective(f, spec) is False:
            raise OnSpectrum('0 lies in the generator spectrum: sup f(s)/s is infinite',
                             details={'lambda': 0.0})
        return
    if imaginary_spectrum(f, spec, budget).contains(lam):
        raise OnSpectrum(f'i*{lam:g} lies in the generator spectrum', details={'lambda': lam})


def resolvent_norm(f: DampingFunction, spec: SpectrumSpec, lam: float, budget: int = DEFAULT_BUDGET) -> float:
    """
    ||(i lambda - A)^-1|| over the sampled modes

    Exact over the truncation for discrete spectra and a lower bound for
    continuous ones.

    Raises:
        OnSpectrum: i lambda lies in the generator spectrum
    """
    lam = float(lam)
    _check_off_spectrum(f, spec, lam, budget)
    s = covered_modes(f, spec, budget)
    return float(np.max(_modal_norms(s, f.evaluate(s), lam)))


@dataclass(frozen=True)
class ResolventProfile:
    lambdas: np.ndarray
    norms: np.ndarray
    maximizing_s: np.ndarray
    warnings: tuple[str, ...] = field(default=())

    def rows(self):
        for lam, norm, s in zip(self.lambdas, self.norms, self.maximizing_s):
            yield float(lam), float(norm), float(s)

    def envelope(self) -> tuple[np.ndarray, np.ndarray]:
        """Local maxima of the profile"""
        if self.norms.size < 3:
            return self.lambdas, self.norms
        peaks = argrelextrema(self.norms, np.greater)[0]
        return self.lambdas[peaks], self.norms[peaks]


def _truncated(f: DampingFunction, spec: SpectrumSpec, sampled: int) -> bool:
    return not spec.bounded or (spec.is_discrete and sampled < spec.mode_count) or not covers_spectrum(f, spec)


def lambda_grid(s: np.ndarray, lower: float, upper: float, count: int = DEFAULT_GRID_POINTS) -> np.ndarray:
    """Log grid on [lower, upper] joined with the mode abscissae sqrt(s) it spans"""
    if not (0 < lower < upper):
        raise InvalidParameter('lambda range must satisfy 0 < lower < upper')
    roots = np.sqrt(s)
    grid = np.concatenate([np.geomspace(lower, upper, count), roots[(roots >= lower) & (roots <= upper)]])
    return np.unique(grid)


def resolvent_profile(f: DampingFunction, spec: SpectrumSpec,
                      lambda_range: tuple[float, float] = DEFAULT_LAMBDA_RANGE,
                      budget: int = DEFAULT_BUDGET, count: int = DEFAULT_GRID_POINTS,
                      lambdas: Sequence[float] | None = None) -> ResolventProfile:
    """
    Resolvent norms on a lambda grid, sorted by lambda

    On truncated spectra the range is clipped to sqrt of the largest
    sampled s; grid points on the generator spectrum are skipped.
    """
    s = covered_modes(f, spec, budget)
    fs = f.evaluate(s)
    warnings: list[str] = []

    if lambdas is None:
        lower, upper = float(lambda_range[0]), float(lambda_range[1])
        horizon = math.sqrt(float(s[-1]))
        if _truncated(f, spec, s.size) and upper > horizon:
            warnings.append(f'lambda range clipped to the truncation horizon {horizon:g}')
            logger.warning(warnings[-1])
            upper = horizon
        grid = lambda_grid(s, lower, upper, count) if lower < upper else np.array([lower])
    else:
        grid = np.unique(np.asarray(lambdas, dtype=float))

    imaginary = imaginary_spectrum(f, spec, budget)
    bijective = is_bijective(f, spec)
    kept, norms, maximizers = [], [], []
    skipped = 0
    for lam in grid:
        if (lam == 0 and bijective is False) or imaginary.contains(lam):
            skipped += 1
            continue
        try:
            values = _modal_norms(s, fs, float(lam))
        except OnSpectrum:
            skipped += 1
            continue
        index = int(np.argmax(values))
        kept.append(lam)
        norms.append(values[index])
        maximizers.append(s[index])

    if skipped:
        warnings.append(f'{skipped} grid points on the generator spectrum skipped')
    return ResolventProfile(np.asarray(kept), np.asarray(norms), np.asarray(maximizers), tuple(warnings))


def _require_semiuniform(f: DampingFunction, spec: SpectrumSpec, budget: int) -> None:
    verdict = classify(f, spec, budget).verdict
    if verdict is not Verdict.SEMIUNIFORM:
        raise NotSemiuniform(f'polynomial growth needs a semiuniformly stable system, got {verdict.value}',
                             details={'verdict': verdict.value})


@dataclass(frozen=True)
class GrowthFit:
    profile: ResolventProfile
    fit: PowerFit

    @property
    def exponent(self) -> float:
        return self.fit.slope

    def to_dict(self) -> dict:
        return {'exponent': self.exponent, 'fit': self.fit.to_dict(), 'warnings': list(self.profile.warnings)}


def growth_exponent(f: DampingFunction, spec: SpectrumSpec,
                    lambda_range: tuple[float, float] = DEFAULT_LAMBDA_RANGE,
                    budget: int = DEFAULT_BUDGET) -> GrowthFit:
    """
    Envelope fit of log ||(i lambda - A)^-1|| against log lambda

    Raises:
        NotSemiuniform: the system is not semiuniformly stable
        InsufficientRange: fewer than 10 envelope points
    """
    _require_semiuniform(f, spec, budget)
    profile = resolvent_profile(f, spec, lambda_range, budget)
    lambdas, norms = profile.envelope()
    return GrowthFit(profile, fit_power_law(lambdas, norms, MIN_FIT_POINTS))


@dataclass(frozen=True)
class ConsistencyReport:
    resolvent: GrowthFit
    psi: PsiDecay
    consistent: bool

    @property
    def nu_hat(self) -> float:
        return self.resolvent.exponent

    @property
    def nu_tilde(self) -> float:
        return self.psi.nu

    def to_dict(self) -> dict:
        return {
            'resolvent_exponent': self.nu_hat,
            'psi_slope': self.psi.fit.slope,
            'psi_exponent': self.nu_tilde,
            'difference': abs(self.nu_hat - self.nu_tilde),
            'tolerance': CONSISTENCY_TOLERANCE,
            'consistent': self.consistent,
            'resolvent_fit': self.resolvent.fit.to_dict(),
            'psi_fit': self.psi.fit.to_dict(),
            'warnings': list(self.resolvent.profile.warnings) + list(self.psi.profile.warnings),
        }


def bt_consistency(f: DampingFunction, spec: SpectrumSpec, budget: int = BT_BUDGET,
                   times: Sequence[float] | None = None,
                   lambda_range: tuple[float, float] = DEFAULT_LAMBDA_RANGE) -> ConsistencyReport:
    """
    Compare resolvent growth ~ lambda^nu with psi(t) ~ t^(-1/nu)

    Both fits stay inside their certified horizons; consistent when the
    two exponents differ by at most 0.2.
    """
    resolvent_fit = growth_exponent(f, spec, lambda_range, budget)
    times = np.geomspace(10.0, 1e4, 60) if times is None else np.asarray(times, dtype=float)
    decay = psi_decay(f, spec, times, budget)
    consistent = abs(resolvent_fit.exponent - decay.nu) <= CONSISTENCY_TOLERANCE
    if not consistent:
        logger.info('resolvent exponent %.4g and psi exponent %.4g disagree', resolvent_fit.exponent, decay.nu)
    return ConsistencyReport(resolvent_fit, decay, bool(consistent))


@dataclass(frozen=True)
class LowerBoundWitness:
    beta: float
    lambdas: np.ndarray
    products: np.ndarray

    @property
    def minimum(self) -> float:
        return float(self.products.min())

    def to_dict(self) -> dict:
        return {'beta': self.beta, 'points': int(self.lambdas.size), 'minimum': self.minimum}


def lower_bound_witness(f: DampingFunction, spec: SpectrumSpec, beta: float,
                        budget: int = DEFAULT_BUDGET) -> LowerBoundWitness:
    """lambda^(-2 beta) ||(i lambda - A)^-1|| along lambda_k = sqrt(s_k) for sampled eigenvalues"""
    if not spec.is_discrete:
        raise InvalidParameter('the lower-bound witness runs along eigenvalues of a discrete spectrum')
    s = covered_modes(f, spec, budget)
    fs = f.evaluate(s)
    imaginary = imaginary_spectrum(f, spec, budget)

    lambdas, products = [], []
    for lam in np.sqrt(s):
        if imaginary.contains(lam):
            continue
        norm = float(np.max(_modal_norms(s, fs, float(lam))))
        lambdas.append(lam)
        products.append(lam ** (-2.0 * beta) * norm)
    if not lambdas:
        raise OnSpectrum('every eigenvalue abscissa lies on the generator spectrum')
    return LowerBoundWitness(float(beta), np.asarray(lambdas), np.asarray(products))


def imaginary_axis_bound(f: DampingFunction, spec: SpectrumSpec, lambda_max: float,
                         budget: int = DEFAULT_BUDGET, count: int = DEFAULT_GRID_POINTS) -> float:
    """
    Largest sampled resolvent norm over [-lambda_max, lambda_max]

    The modal norms are even in lambda, so the positive half-axis and 0 suffice.
    """
    if not lambda_max > 0:
        raise InvalidParameter('lambda_max must be positive')
    s = covered_modes(f, spec, budget)
    grid = np.concatenate([[0.0], lambda_grid(s, min(1e-3, lambda_max / 2.0), lambda_max, count)])
    profile = resolvent_profile(f, spec, budget=budget, lambdas=grid)
    if profile.norms.size == 0:
        raise OnSpectrum('the whole sampled axis lies on the generator spectrum')
    return float(profile.norms.max())
