"""
Modal dynamics of the damped semigroup

Each spectrum point s carries a 2x2 system in energy coordinates
(w, v) = (sqrt(s) u, v), where the phase-space norm is Euclidean. Its
exponential is known in closed form, so evolution is exact up to
floating point and operator norms restrict honestly to each mode.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from dampinglab.analysis.damping import DampingFunction, covered_modes, covers_spectrum
from dampinglab.analysis.fitting import PowerFit, fit_power_law
from dampinglab.analysis.generator_spectrum import CRITICAL_RTOL, XiPair, is_bijective, xi_pair, xi_roots
from dampinglab.analysis.spectrum_model import DEFAULT_BUDGET, SpectrumSpec, zero_set
from dampinglab.errors.exceptions import InvalidParameter, NonPositivePoint, NotBijective

logger = logging.getLogger(__name__)

# psi(t) is trusted while its maximizing mode stays below this share of the largest sampled s
HORIZON_FRACTION = 0.5

WITNESS_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ModeMatrix:
    s: float
    fs: float

    @property
    def entries(self) -> np.ndarray:
        root = math.sqrt(self.s)
        return np.array([[0.0, root], [-root, -self.fs]])

    @property
    def trace(self) -> float:
        return -self.fs

    @property
    def determinant(self) -> float:
        return self.s

    @property
    def eigenvalues(self) -> XiPair:
        return xi_pair(self.s, self.fs)

    @property
    def inverse(self) -> np.ndarray:
        root = math.sqrt(self.s)
        return np.array([[-self.fs, -root], [root, 0.0]]) / self.s


def _check_mode(s, fs) -> None:
    if np.any(np.asarray(s) <= 0):
        raise NonPositivePoint('mode frequencies must be positive')
    if np.any(np.asarray(fs) < 0):
        raise InvalidParameter('damping values must be nonnegative')


def mode_matrix(s: float, fs: float) -> ModeMatrix:
    """Generator restricted to the mode s: [[0, sqrt(s)], [-sqrt(s), -f(s)]]"""
    _check_mode(s, fs)
    return ModeMatrix(float(s), float(fs))


def propagators(s, fs, t: float) -> np.ndarray:
    """
    exp(t * mode matrix) for every mode, shape (n, 2, 2), real

    With c = -f/2 and B = mode matrix - c I one has B^2 = (f^2/4 - s) I,
    giving cosh/sinh, cos/sin or 1/t forms per regime. Overdamped modes
    with a large spread switch to the two-exponential form built from the
    roots, which neither overflows nor cancels.
    """
    if t < 0:
        raise InvalidParameter('propagation time must be nonnegative')
    s = np.atleast_1d(np.asarray(s, dtype=float))
    fs = np.atleast_1d(np.asarray(fs, dtype=float))
    root = np.sqrt(s)
    half = fs / 2.0

    with np.errstate(over='ignore', invalid='ignore', divide='ignore', under='ignore'):
        discriminant = fs * fs - 4.0 * s
        critical = np.abs(discriminant) <= CRITICAL_RTOL * np.maximum(fs * fs, 4.0 * s)
        over = (discriminant > 0) & ~critical
        spread = np.sqrt(np.abs(discriminant)) / 2.0
        decay = np.exp(-half * t)

        # (diagonal part, off-diagonal factor) per regime
        cos_part = decay * np.cos(spread * t)
        sin_part = decay * np.sin(spread * t) / spread
        cosh_part = decay * np.cosh(spread * t)
        sinh_part = decay * np.sinh(spread * t) / spread
        diagonal = np.where(critical, decay, np.where(over, cosh_part, cos_part))
        factor = np.where(critical, decay * t, np.where(over, sinh_part, sin_part))

        p00 = diagonal + half * factor
        p01 = root * factor
        p11 = diagonal - half * factor

        xi_plus, xi_minus, _ = xi_roots(s, fs)
        near, far = xi_plus.real, xi_minus.real
        gap = near - far
        e_near, e_far = np.exp(near * t), np.exp(far * t)
        two_exp = over & (spread * t >= 1.0)
        p00 = np.where(two_exp, (-far * e_near + near * e_far) / gap, p00)
        p01 = np.where(two_exp, root * (e_near - e_far) / gap, p01)
        p11 = np.where(two_exp, (near * e_near - far * e_far) / gap, p11)

    result = np.empty((s.size, 2, 2))
    result[:, 0, 0] = p00
    result[:, 0, 1] = p01
    result[:, 1, 0] = -p01
    result[:, 1, 1] = p11
    return result


def mode_propagator(s: float, fs: float, t: float) -> np.ndarray:
    """exp(t * mode matrix) as a 2x2 complex matrix"""
    _check_mode(s, fs)
    return propagators(s, fs, t)[0].astype(complex)


def largest_singular_values(matrices: np.ndarray) -> np.ndarray:
    """Spectral norms of a stack of 2x2 matrices"""
    frobenius = np.sum(np.abs(matrices) ** 2, axis=(-2, -1))
    determinant = np.abs(matrices[..., 0, 0] * matrices[..., 1, 1] - matrices[..., 0, 1] * matrices[..., 1, 0])
    gap = np.sqrt(np.maximum(frobenius ** 2 - 4.0 * determinant ** 2, 0.0))
    return np.sqrt((frobenius + gap) / 2.0)


def _inverse_mode_matrices(s: np.ndarray, fs: np.ndarray) -> np.ndarray:
    root = np.sqrt(s)
    inverse = np.zeros((s.size, 2, 2))
    inverse[:, 0, 0] = -fs / s
    inverse[:, 0, 1] = -root / s
    inverse[:, 1, 0] = root / s
    return inverse


def _read_only(values, dtype) -> np.ndarray:
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class ModalState:
    """Immutable modal state: arrays indexed by mode, ascending in s"""
    s: np.ndarray
    fs: np.ndarray
    w: np.ndarray
    v: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        s = _read_only(np.atleast_1d(self.s), float)
        fs = _read_only(np.atleast_1d(self.fs), float)
        w = _read_only(np.atleast_1d(self.w), complex)
        v = _read_only(np.atleast_1d(self.v), complex)
        if not (s.shape == fs.shape == w.shape == v.shape) or s.ndim != 1:
            raise InvalidParameter('modal state arrays must share one dimension')
        _check_mode(s, fs)
        if np.any(np.diff(s) <= 0):
            raise InvalidParameter('modal state modes must be strictly increasing in s')
        if self.time < 0:
            raise InvalidParameter('modal state time must be nonnegative')
        object.__setattr__(self, 's', s)
        object.__setattr__(self, 'fs', fs)
        object.__setattr__(self, 'w', w)
        object.__setattr__(self, 'v', v)

    @property
    def modes(self) -> Iterable[tuple[float, complex, complex]]:
        return zip(self.s.tolist(), self.w.tolist(), self.v.tolist())

    @property
    def norm(self) -> float:
        return math.sqrt(2.0 * energy(self))

    def displacement(self) -> np.ndarray:
        """Modal displacements u = w / sqrt(s)"""
        return self.w / np.sqrt(self.s)


def evolve(state: ModalState, dt: float) -> ModalState:
    """Apply the semigroup for time dt, mode by mode"""
    if dt < 0:
        raise InvalidParameter('evolution time must be nonnegative')
    if dt == 0:
        return state
    p = propagators(state.s, state.fs, dt)
    w = p[:, 0, 0] * state.w + p[:, 0, 1] * state.v
    v = p[:, 1, 0] * state.w + p[:, 1, 1] * state.v
    return ModalState(state.s, state.fs, w, v, state.time + dt)


def energy(state: ModalState) -> float:
    # fixed ascending-s order with compensated summation
    return 0.5 * math.fsum((np.abs(state.w) ** 2 + np.abs(state.v) ** 2).tolist())


def dissipation_rate(state: ModalState) -> float:
    """d/dt of the energy: -sum f(s)|v|^2"""
    return -math.fsum((state.fs * np.abs(state.v) ** 2).tolist())


def state_from_displacement(f: DampingFunction, s: Sequence[float], u: Sequence[complex],
                            v: Sequence[complex]) -> ModalState:
    """Modal state from displacement and velocity coefficients"""
    s = np.asarray(s, dtype=float)
    order = np.argsort(s)
    s = s[order]
    u = np.asarray(u, dtype=complex)[order]
    v = np.asarray(v, dtype=complex)[order]
    return ModalState(s, f.evaluate(s), np.sqrt(s) * u, v)


def random_state(f: DampingFunction, spec: SpectrumSpec, budget: int = DEFAULT_BUDGET,
                 seed: int = 0) -> ModalState:
    """Seeded Gaussian initial data on the sampled modes, normalized to energy 1/2"""
    s = covered_modes(f, spec, budget)
    rng = np.random.default_rng(seed)
    real = rng.standard_normal((2, s.size))
    imaginary = rng.standard_normal((2, s.size))
    coefficients = real + 1j * imaginary
    coefficients /= np.sqrt(np.sum(np.abs(coefficients) ** 2))
    return ModalState(s, f.evaluate(s), coefficients[0], coefficients[1])


@dataclass(frozen=True)
class TrajectoryPoint:
    t: float
    energy: float
    dissipation_rate: float


def trajectory(state: ModalState, times: Sequence[float]) -> list[TrajectoryPoint]:
    """Energy and dissipation at each requested time, every point propagated from the initial state"""
    times = np.asarray(times, dtype=float)
    if times.size == 0 or np.any(times < 0) or np.any(np.diff(times) <= 0):
        raise InvalidParameter('time grid must be nonempty, nonnegative and increasing')
    points = []
    for t in times:
        current = evolve(state, float(t))
        points.append(TrajectoryPoint(float(t), energy(current), dissipation_rate(current)))
    return points


@dataclass(frozen=True)
class PsiProfile:
    times: np.ndarray
    values: np.ndarray
    mode_index: np.ndarray
    mode_s: np.ndarray
    certified: np.ndarray
    warnings: tuple[str, ...] = field(default=())

    def rows(self):
        for t, value, s, ok in zip(self.times, self.values, self.mode_s, self.certified):
            yield float(t), float(value), float(s), bool(ok)


def psi_profile(f: DampingFunction, spec: SpectrumSpec, times: Sequence[float],
                budget: int = DEFAULT_BUDGET) -> PsiProfile:
    """
    Finite-truncation estimate of psi(t) = ||S(t) A^-1|| on a time grid

    Each value is the largest mode norm of exp(t M_s) M_s^-1. A time is
    certified while its maximizing mode sits well inside the sampled range;
    past that the truncation itself decays and the estimate is too small.

    Raises:
        NotBijective: 0 lies in the generator spectrum
    """
    bijective = is_bijective(f, spec)
    if bijective is False:
        raise NotBijective('psi(t) needs an invertible generator: sup f(s)/s is infinite')
    if bijective is None:
        logger.warning('invertibility of the generator not certified; psi(t) is a sampled estimate')

    times = np.asarray(times, dtype=float)
    if np.any(times < 0):
        raise InvalidParameter('psi(t) needs t >= 0')
    s = covered_modes(f, spec, budget)
    fs = f.evaluate(s)
    inverse = _inverse_mode_matrices(s, fs)
    truncated = (not spec.bounded or (spec.is_discrete and s.size < spec.mode_count)
                 or not covers_spectrum(f, spec))

    values, indices = [], []
    for t in times:
        norms = largest_singular_values(propagators(s, fs, float(t)) @ inverse)
        index = int(np.argmax(norms))
        values.append(norms[index])
        indices.append(index)

    indices = np.asarray(indices, dtype=int)
    mode_s = s[indices]
    if truncated:
        certified = (indices < s.size - 1) & (mode_s <= HORIZON_FRACTION * s[-1])
    else:
        certified = np.ones(times.size, dtype=bool)

    warnings = ()
    if not certified.all():
        horizon = times[~certified].min()
        warnings = (f'psi(t) truncated: maximizing mode reaches the sampled horizon from t={horizon:g}',)
        logger.warning(warnings[0])

    return PsiProfile(times, np.asarray(values), indices, mode_s, certified, warnings)


def psi_norm(f: DampingFunction, spec: SpectrumSpec, t: float, budget: int = DEFAULT_BUDGET) -> float:
    """psi(t) = ||S(t) A^-1|| over the sampled modes"""
    return float(psi_profile(f, spec, [t], budget).values[0])


@dataclass(frozen=True)
class PsiDecay:
    profile: PsiProfile
    fit: PowerFit

    @property
    def nu(self) -> float:
        """Resolvent exponent implied by psi(t) ~ t^(-1/nu)"""
        return -1.0 / self.fit.slope if self.fit.slope < 0 else math.inf

    def to_dict(self) -> dict:
        return {'slope': self.fit.slope, 'nu': self.nu, 'fit': self.fit.to_dict(),
                'warnings': list(self.profile.warnings)}


def psi_decay(f: DampingFunction, spec: SpectrumSpec, times: Sequence[float],
              budget: int = DEFAULT_BUDGET) -> PsiDecay:
    """Log-log slope of psi(t) over the certified part of the time grid"""
    return fit_psi(psi_profile(f, spec, times, budget))


def fit_psi(profile: PsiProfile) -> PsiDecay:
    mask = profile.certified & (profile.times > 0)
    return PsiDecay(profile, fit_power_law(profile.times[mask], profile.values[mask]))


def semigroup_norm(f: DampingFunction, spec: SpectrumSpec, t: float, budget: int = DEFAULT_BUDGET) -> float:
    """||S(t)|| over the sampled modes"""
    s = covered_modes(f, spec, budget)
    return float(np.max(largest_singular_values(propagators(s, f.evaluate(s), t))))


def growth_bound_estimate(f: DampingFunction, spec: SpectrumSpec, times: Sequence[float],
                          budget: int = DEFAULT_BUDGET) -> float:
    """Least-squares rate of log ||S(t)|| against t (empirical growth bound)"""
    times = np.asarray(times, dtype=float)
    norms = np.array([semigroup_norm(f, spec, float(t), budget) for t in times])
    usable = norms > 0
    if np.count_nonzero(usable) < 2:
        raise InvalidParameter('growth bound estimate needs two times with nonzero norm')
    slope, _ = np.polyfit(times[usable], np.log(norms[usable]), 1)
    return float(min(slope, 0.0))


@dataclass(frozen=True)
class ConstantEnergyWitness:
    state: ModalState
    times: np.ndarray
    energies: np.ndarray
    max_deviation: float
    verified: bool

    @property
    def mode(self) -> float:
        return float(self.state.s[0])

    def to_dict(self) -> dict:
        return {
            'mode': self.mode,
            'initial_energy': float(self.energies[0]),
            'max_deviation': self.max_deviation,
            't_max': float(self.times[-1]),
            'verified': self.verified,
        }


def constant_energy_witness(f: DampingFunction, spec: SpectrumSpec, times: Sequence[float] | None = None,
                            budget: int = DEFAULT_BUDGET) -> ConstantEnergyWitness | None:
    """
    Solution of constant positive energy, when f vanishes at an eigenvalue

    Starts from zero displacement and velocity A^(-1/2) on the first
    eigenvalue s* of the zero-set, i.e. (w, v) = (0, s*^(-1/2)), evolved with
    the actual value f(s*). Zeros within the zero tolerance may leak energy
    at rate at most 2 f(s*) E, which the verification allows for. Returns
    None on continuous spectra and when no eigenvalue is a zero of f.
    """
    if not spec.is_discrete:
        return None
    zeros = zero_set(spec, f, budget=budget)
    if not zeros.points:
        return None

    mode = zeros.points[0]
    fs = float(f.evaluate(mode))
    state = ModalState([mode], [fs], [0.0], [mode ** -0.5])
    times = np.linspace(0.0, 100.0, 201) if times is None else np.asarray(times, dtype=float)
    energies = np.array([energy(evolve(state, float(t))) for t in times])
    deviation = float(np.max(np.abs(energies - energies[0])))
    allowance = WITNESS_TOLERANCE + 2.0 * fs * float(times[-1])
    verified = deviation <= allowance * energies[0]
    return ConstantEnergyWitness(state, times, energies, deviation, bool(verified))
