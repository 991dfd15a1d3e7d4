"""
Run Configuration

Run configs are dotenv-style KEY=value files. They are read with
python-dotenv's stream parser so every problem is reported with its line
number; command-line flags override file values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

import numpy as np
from dotenv.parser import parse_stream

from dampinglab.analysis.damping import extremes, make_damping
from dampinglab.analysis.models import ModelPreset, build_preset
from dampinglab.analysis.spectrum_model import make_spectrum
from dampinglab.errors.exceptions import ConfigError, LabError
from dampinglab.utils.csv_io import read_knots_csv
from dampinglab.utils.validators import validate_grid, validate_run_config

# file key -> setting name
CONFIG_KEYS = {
    'MODEL': 'model',
    'THETA': 'theta',
    'OMEGA': 'omega',
    'MASS': 'm',
    'SPECTRUM_KIND': 'spectrum_kind',
    'EIGENVALUES': 'eigenvalues',
    'TAIL': 'tail',
    'TAIL_START': 'tail_start',
    'TAIL_OMEGA': 'tail_omega',
    'TAIL_COEFFICIENT': 'tail_coefficient',
    'TAIL_POWER': 'tail_power',
    'INTERVALS': 'intervals',
    'DAMPING': 'damping',
    'DAMPING_CONSTANT': 'damping_constant',
    'DAMPING_THETA': 'damping_theta',
    'DAMPING_OMEGA': 'damping_omega',
    'DAMPING_KNOTS': 'damping_knots',
    'DAMPING_TAIL_POWER': 'damping_tail_power',
    'DAMPING_TAIL_COEFFICIENT': 'damping_tail_coefficient',
    'MODES': 'modes',
    'SEED': 'seed',
    'T_MIN': 't_min',
    'T_MAX': 't_max',
    'T_COUNT': 't_count',
    'LAMBDA_MIN': 'lambda_min',
    'LAMBDA_MAX': 'lambda_max',
    'LAMBDA_COUNT': 'lambda_count',
    'GRID': 'grid',
    'FAMILY': 'family',
    'OUTPUT_DIR': 'output_dir',
    'INITIAL': 'initial',
}

DEFAULT_GRID = '-2:3:0.25'


@dataclass
class ConfigValues:
    """Settings read from a config file, with the line each came from"""
    values: dict[str, str] = field(default_factory=dict)
    lines: dict[str, int] = field(default_factory=dict)
    base: Path = field(default_factory=Path)

    def locate(self, name: str, message: str) -> str:
        line = self.lines.get(name)
        return f'line {line}: {message}' if line else message


def read_config_file(path) -> ConfigValues:
    """
    Parse a run config file

    Raises:
        ConfigError: missing file, unparseable line, unknown or repeated key
    """
    target = Path(path)
    if not target.is_file():
        raise ConfigError(f'config file not found: {target}')

    config = ConfigValues(base=target.parent)
    problems = []
    with target.open(encoding='utf-8') as handle:
        for binding in parse_stream(handle):
            line = binding.original.line
            if binding.error:
                problems.append(f'line {line}: cannot parse {binding.original.string.strip()!r}')
                continue
            if binding.key is None:
                continue
            key = binding.key.strip().upper()
            if key not in CONFIG_KEYS:
                problems.append(f'line {line}: unknown key {binding.key}')
                continue
            name = CONFIG_KEYS[key]
            if name in config.values:
                problems.append(f'line {line}: {key} already set on line {config.lines[name]}')
                continue
            if binding.value is None or binding.value.strip() == '':
                problems.append(f'line {line}: {key} has no value')
                continue
            config.values[name] = binding.value.strip()
            config.lines[name] = line

    if problems:
        raise ConfigError(f'{target}: ' + '; '.join(problems), details={'problems': problems})
    return config


def parse_grid(text: str) -> tuple[float, ...]:
    """Parameter grid from 'start:stop:step' or a comma-separated list"""
    text = str(text).strip()
    try:
        if ':' in text:
            start, stop, step = (float(part) for part in text.split(':'))
            if step <= 0:
                raise ConfigError('grid step must be positive')
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            values = tuple(round(start + index * step, 12) for index in range(max(count, 0)))
        else:
            values = tuple(float(item) for item in text.split(',') if item.strip())
    except ValueError as error:
        raise ConfigError(f'cannot parse grid {text!r}') from error

    is_valid, message = validate_grid(values)
    if not is_valid:
        raise ConfigError(message)
    return values


@dataclass(frozen=True)
class RunConfig:
    """Resolved inputs of one command run"""
    command: str
    model: ModelPreset | None
    budget: int
    seed: int
    output_dir: Path
    source: str
    t_min: float = 10.0
    t_max: float = 1e3
    t_count: int = 40
    lambda_min: float = 10.0
    lambda_max: float = 1e3
    lambda_count: int = 400
    family: str = 'wave'
    grid: tuple[float, ...] = ()
    params: dict = field(default_factory=dict)
    initial: Path | None = None

    def log_times(self) -> np.ndarray:
        return np.geomspace(self.t_min, self.t_max, self.t_count)

    def linear_times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.t_count)

    def describe(self) -> dict:
        return {
            'command': self.command,
            'source': self.source,
            'model': self.model.describe() if self.model else None,
            'budget': self.budget,
            'seed': self.seed,
        }


SPECTRUM_SETTINGS = ('eigenvalues', 'intervals', 'tail', 'tail_start', 'tail_omega',
                     'tail_coefficient', 'tail_power', 'spectrum_kind')
DAMPING_SETTINGS = ('damping', 'damping_constant', 'damping_theta', 'damping_omega',
                    'damping_knots', 'damping_tail_power', 'damping_tail_coefficient')


def _located(config: ConfigValues | None, names, error: Exception) -> ConfigError:
    """ConfigError pointing at the first config line among `names`"""
    name = next((name for name in names if config and name in config.lines), None)
    message = config.locate(name, str(error)) if name else str(error)
    details = {'error': getattr(error, 'name', type(error).__name__), **getattr(error, 'details', {})}
    return ConfigError(message, details=details)


def _raw_model(settings: Mapping[str, Any], config: ConfigValues | None) -> ModelPreset:
    try:
        spectrum = _raw_spectrum(settings)
    except ConfigError:
        raise
    except (LabError, ValueError) as error:
        raise _located(config, SPECTRUM_SETTINGS, error) from error

    try:
        damping = _raw_damping(settings, config)
    except ConfigError:
        raise
    except (LabError, ValueError) as error:
        raise _located(config, DAMPING_SETTINGS, error) from error

    return ModelPreset(
        name='custom',
        spectrum=spectrum,
        damping=damping,
        domain_factorizes=extremes(damping, spectrum).domain_factorizes,
        notes='raw spectrum and damping from the run configuration',
    )


def _raw_spectrum(settings: Mapping[str, Any]):
    return make_spectrum({
        'kind': settings.get('spectrum_kind'),
        'eigenvalues': settings.get('eigenvalues'),
        'tail': settings.get('tail'),
        'tail_start': settings.get('tail_start') or 1,
        'tail_omega': settings.get('tail_omega') or 0.0,
        'tail_coefficient': settings.get('tail_coefficient') or 1.0,
        'tail_power': settings.get('tail_power') or 2.0,
        'intervals': settings.get('intervals'),
    })


def _raw_damping(settings: Mapping[str, Any], config: ConfigValues | None):
    knots = ()
    if settings.get('damping_knots'):
        path = Path(settings['damping_knots'])
        if not path.is_absolute() and config is not None and 'damping_knots' in config.values:
            path = config.base / path
        knots = read_knots_csv(path)

    return make_damping({
        'family': settings.get('damping') or 'zero',
        'constant': settings.get('damping_constant') or 0.0,
        'theta': settings.get('damping_theta') or 0.0,
        'omega': settings.get('damping_omega') or 1.0,
        'knots': knots,
        'tail_power': settings.get('damping_tail_power'),
        'tail_coefficient': settings.get('damping_tail_coefficient') or 1.0,
    })


def build_run_config(command: str, flags: Mapping[str, Any], config: ConfigValues | None = None,
                     defaults: Mapping[str, Any] | None = None, fallbacks: Mapping[str, Any] | None = None,
                     needs_model: bool = True) -> RunConfig:
    """
    Merge config-file values with command-line flags and build the model

    Args:
        command: Command name
        flags: Option values; None means "not given"
        config: Parsed config file, if any
        defaults: Application defaults (DEFAULT_BUDGET, DEFAULT_SEED, OUTPUT_DIR)
        fallbacks: Command-specific setting defaults, below file values
        needs_model: False for commands that build their own models (table)

    Raises:
        ConfigError: invalid or conflicting settings
    """
    defaults = defaults or {}
    settings: dict[str, Any] = dict(fallbacks or {})
    if config:
        settings.update(config.values)
    settings.update({key: value for key, value in flags.items() if value is not None})

    is_valid, errors = validate_run_config(settings)
    if not needs_model and not settings.get('model'):
        errors.pop('model', None)
        is_valid = not errors
    if not is_valid:
        messages = [config.locate(name, message) if config else message for name, message in errors.items()]
        raise ConfigError('; '.join(messages), details={'fields': errors})

    try:
        params = {name: float(settings[name]) for name in ('theta', 'omega', 'm') if settings.get(name) is not None}
        if settings.get('model'):
            model = build_preset(str(settings['model']), **params)
            source = 'preset'
        elif needs_model:
            model = _raw_model(settings, config)
            source = 'raw'
        else:
            model, source = None, 'none'

        budget = int(str(settings.get('modes', defaults.get('DEFAULT_BUDGET', 200))).strip())
        seed = int(str(settings.get('seed', defaults.get('DEFAULT_SEED', 0))).strip())
        t_count = int(str(settings.get('t_count', 40)).strip())
        lambda_count = int(str(settings.get('lambda_count', 400)).strip())
    except ValueError as error:
        raise ConfigError(f'invalid run setting: {error}') from error

    initial = None
    if settings.get('initial'):
        initial = Path(settings['initial'])
        if not initial.is_absolute() and config is not None and 'initial' in config.values:
            initial = config.base / initial

    return RunConfig(
        command=command,
        model=model,
        budget=budget,
        seed=seed,
        output_dir=Path(settings.get('output_dir') or defaults.get('OUTPUT_DIR', 'output')),
        source=source,
        t_min=float(settings.get('t_min', 10.0)),
        t_max=float(settings.get('t_max', 1e3)),
        t_count=t_count,
        lambda_min=float(settings.get('lambda_min', 10.0)),
        lambda_max=float(settings.get('lambda_max', 1e3)),
        lambda_count=lambda_count,
        family=str(settings.get('family', 'wave')).strip().lower(),
        grid=parse_grid(settings.get('grid', DEFAULT_GRID)),
        params=params,
        initial=initial,
    )
