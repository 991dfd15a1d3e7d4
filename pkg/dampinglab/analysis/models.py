"""
Model presets

The one-dimensional instantiations on (0, pi): eigenvalues n^2 for the
string, n^4 for the hinged beam, n^4 / (1 + omega n^2) for the beam with
rotational inertia, and the continuous spectrum [m^2, inf) of the
Klein-Gordon operator.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from dampinglab.analysis.damping import DampingFunction
from dampinglab.analysis.spectrum_model import SpectrumSpec, make_spectrum
from dampinglab.errors.exceptions import InvalidParameter


@dataclass(frozen=True)
class ModelPreset:
    name: str
    spectrum: SpectrumSpec
    damping: DampingFunction
    domain_factorizes: bool
    notes: str = ''
    parameters: dict = field(default_factory=dict)

    def describe(self) -> dict:
        return {
            'name': self.name,
            'parameters': dict(self.parameters),
            'spectrum': self.spectrum.describe(),
            'damping': self.damping.describe(),
            'domain_factorizes': self.domain_factorizes,
            'notes': self.notes,
        }


def _finite(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise InvalidParameter(f'{name} must be finite')
    return value


def wave(theta: float) -> ModelPreset:
    """String with fractional damping f(s) = s^theta"""
    theta = _finite(theta, 'theta')
    return ModelPreset(
        name='wave',
        spectrum=make_spectrum({'kind': 'discrete', 'tail': 'square'}),
        damping=DampingFunction.power(theta),
        domain_factorizes=theta <= 0.5,
        notes='u_tt - u_xx + (-d_xx)^theta u_t = 0 on (0, pi), Dirichlet',
        parameters={'theta': theta},
    )


def beam(theta: float) -> ModelPreset:
    """Hinged beam without rotational inertia, f(s) = s^(theta/2)"""
    theta = _finite(theta, 'theta')
    return ModelPreset(
        name='beam',
        spectrum=make_spectrum({'kind': 'discrete', 'tail': 'fourth'}),
        damping=DampingFunction.power(theta / 2.0),
        domain_factorizes=theta <= 1.0,
        notes='u_tt + u_xxxx + (-d_xx)^theta u_t = 0 on (0, pi), hinged ends',
        parameters={'theta': theta},
    )


def beam_rotational(theta: float, omega: float) -> ModelPreset:
    """Hinged beam with rotational inertia omega > 0"""
    theta = _finite(theta, 'theta')
    omega = _finite(omega, 'omega')
    if not omega > 0:
        raise InvalidParameter('beam with rotational inertia needs omega > 0')
    return ModelPreset(
        name='beam-rot',
        spectrum=make_spectrum({'kind': 'discrete', 'tail': 'rotational', 'tail_omega': omega}),
        damping=DampingFunction.rotational_inertia(theta, omega),
        domain_factorizes=theta <= 1.5,
        notes='(1 - omega d_xx) u_tt + u_xxxx + (-d_xx)^theta u_t = 0 on (0, pi), hinged ends',
        parameters={'theta': theta, 'omega': omega},
    )


def klein_gordon(m: float) -> ModelPreset:
    """Undamped Klein-Gordon operator -d_xx + m^2 on the line"""
    m = _finite(m, 'm')
    if not m > 0:
        raise InvalidParameter('Klein-Gordon mass must be positive')
    return ModelPreset(
        name='klein-gordon',
        spectrum=make_spectrum({'kind': 'continuous', 'intervals': [(m * m, math.inf)]}),
        damping=DampingFunction.zero(),
        domain_factorizes=True,
        notes='u_tt - u_xx + m^2 u = 0 on the real line; A has no compact inverse',
        parameters={'m': m},
    )


PRESETS: dict[str, Callable[..., ModelPreset]] = {
    'wave': wave,
    'beam': beam,
    'beam-rot': beam_rotational,
    'klein-gordon': klein_gordon,
}

# parameters each preset takes, in call order
PRESET_PARAMETERS: dict[str, tuple[str, ...]] = {
    'wave': ('theta',),
    'beam': ('theta',),
    'beam-rot': ('theta', 'omega'),
    'klein-gordon': ('m',),
}


def build_preset(name: str, **params) -> ModelPreset:
    """
    Build a preset by name, ignoring parameters it does not take

    Raises:
        InvalidParameter: unknown name or missing parameter
    """
    key = name.strip().lower()
    if key not in PRESETS:
        raise InvalidParameter(f"unknown model {name!r}; choose one of {', '.join(PRESETS)}")

    arguments = {}
    for parameter in PRESET_PARAMETERS[key]:
        if params.get(parameter) is None:
            raise InvalidParameter(f'model {key} needs {parameter}')
        arguments[parameter] = params[parameter]
    return PRESETS[key](**arguments)
