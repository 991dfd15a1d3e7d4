"""
Simulate Command
Energy trajectory of one initial state under the damped semigroup
"""
import click
import numpy as np
from flask import Blueprint, current_app, g

from dampinglab.analysis.modal_dynamics import (
    constant_energy_witness,
    psi_profile,
    random_state,
    state_from_displacement,
    trajectory,
)
from dampinglab.errors.exceptions import ConfigError, InvalidParameter, NotBijective
from dampinglab.middleware.inputs import model_options, require_model
from dampinglab.utils.csv_io import read_csv_table
from dampinglab.utils.responses import success_response, write_csv, write_json

simulate_bp = Blueprint('simulate', __name__, cli_group=None)

TRAJECTORY_HEADER = ('t', 'energy', 'dissipation_rate', 'psi', 'maximizing_mode')
INITIAL_COLUMNS = ('s', 'u', 'v')


def load_initial_state(model, path):
    """
    Modal initial data from a CSV with columns s, u, v

    u and v are the displacement and velocity coefficients of the mode s;
    every s must be a point of the model spectrum.
    """
    header, rows = read_csv_table(path)
    missing = [column for column in INITIAL_COLUMNS if column not in header]
    if missing:
        raise ConfigError(f"{path}: initial data needs columns {', '.join(missing)}")

    try:
        columns = {name: np.array([row[header.index(name)] for row in rows], dtype=float)
                   for name in INITIAL_COLUMNS}
    except ValueError as error:
        raise ConfigError(f'{path}: initial data must be numeric') from error
    outside = [s for s in columns['s'] if not model.spectrum.contains(float(s))]
    if outside:
        raise InvalidParameter(f'initial data on points outside the spectrum: {outside[:5]}',
                               details={'points': [float(s) for s in outside]})
    return state_from_displacement(model.damping, columns['s'], columns['u'], columns['v'])


@simulate_bp.cli.command('simulate')
@model_options
@click.option('--t-max', type=float, default=None, help='Final time')
@click.option('--t-count', type=int, default=None, help='Number of output times')
@click.option('--initial', type=click.Path(dir_okay=False), default=None, help='Initial data CSV (s, u, v)')
@require_model(fallbacks={'t_max': 20.0, 't_count': 201})
def simulate_command():
    """
    Propagate seeded random (or given) initial data and record the energy

    Writes:
        <model>_trajectory.csv: t, energy, dissipation_rate, psi, maximizing_mode
        <model>_trajectory.json: initial data source and energy summary
    """
    model, settings = g.model, g.settings

    if settings.initial is not None:
        state = load_initial_state(model, settings.initial)
        source = str(settings.initial)
    else:
        state = random_state(model.damping, model.spectrum, settings.budget, settings.seed)
        source = f'random (seed {settings.seed})'
    current_app.logger.info(f'simulate: {state.s.size} modes from {source}')

    times = settings.linear_times()
    points = trajectory(state, times)
    try:
        profile = psi_profile(model.damping, model.spectrum, times, settings.budget)
        psi_columns = [(float(value), float(s)) for value, s in zip(profile.values, profile.mode_s)]
    except NotBijective as error:
        # psi(t) is undefined; the energy columns still stand
        current_app.logger.warning(f'psi column left empty: {error}')
        psi_columns = [(None, None)] * len(points)
    rows = [(point.t, point.energy, point.dissipation_rate) + psi for point, psi in zip(points, psi_columns)]

    stem = settings.output_dir / f'{model.name}_trajectory'
    csv_path = write_csv(stem.with_suffix('.csv'), TRAJECTORY_HEADER, rows)

    energies = np.array([point.energy for point in points])
    summary = {
        'run': settings.describe(),
        'initial_data': source,
        'modes': int(state.s.size),
        'initial_energy': float(energies[0]),
        'final_energy': float(energies[-1]),
        'energy_nonincreasing': bool(np.all(np.diff(energies) <= 1e-12 * energies[0])),
    }
    witness = constant_energy_witness(model.damping, model.spectrum, budget=settings.budget)
    if witness is not None:
        summary['constant_energy_witness'] = witness.to_dict()

    json_path = write_json(stem.with_suffix('.json'), summary)
    summary['files'] = [str(csv_path), str(json_path)]
    return success_response(summary, f'{len(points)} trajectory points written')
