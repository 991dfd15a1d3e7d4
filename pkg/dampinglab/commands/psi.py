"""
Psi Command
Semiuniform decay function psi(t) = ||S(t) A^-1|| and its log-log slope
"""
import click
from flask import Blueprint, current_app, g

from dampinglab.analysis.modal_dynamics import fit_psi, psi_profile
from dampinglab.errors.exceptions import InsufficientRange
from dampinglab.middleware.inputs import model_options, require_model
from dampinglab.utils.responses import success_response, write_atomic, write_csv, write_json
from dampinglab.utils.svg import Curve, SvgStyle, emit_svg

psi_bp = Blueprint('psi', __name__, cli_group=None)

PSI_HEADER = ('t', 'psi', 'maximizing_s', 'certified')


@psi_bp.cli.command('psi')
@model_options
@click.option('--t-min', type=float, default=None, help='First time of the log grid')
@click.option('--t-max', type=float, default=None, help='Last time of the log grid')
@click.option('--t-count', type=int, default=None, help='Number of grid times')
@require_model(fallbacks={'t_min': 10.0, 't_max': 1e3, 't_count': 40})
def psi_command():
    """
    Tabulate psi(t) on a log grid and fit its decay exponent

    Writes:
        <model>_psi.csv: t, psi, maximizing_s, certified
        <model>_psi.svg: log-log curve
        <model>_psi.json: fitted slope over the certified times
    """
    model, settings = g.model, g.settings
    profile = psi_profile(model.damping, model.spectrum, settings.log_times(), settings.budget)

    stem = settings.output_dir / f'{model.name}_psi'
    csv_path = write_csv(stem.with_suffix('.csv'), PSI_HEADER, profile.rows())
    curve = Curve(profile.times, profile.values, label='psi', ylabel='psi(t)')
    svg_path = write_atomic(stem.with_suffix('.svg'), emit_svg(curve, SvgStyle(title=f'psi(t), {model.name}')))

    summary = {
        'run': settings.describe(),
        'certified_points': int(profile.certified.sum()),
        'warnings': list(profile.warnings),
    }
    try:
        decay = fit_psi(profile)
        summary['fit'] = decay.to_dict()
        message = f'psi(t) slope {decay.fit.slope:.4g}'
    except InsufficientRange as error:
        # the table is still useful without a slope
        current_app.logger.warning(f'psi fit skipped: {error}')
        summary['fit'] = None
        message = 'psi(t) written without a fit'

    json_path = write_json(stem.with_suffix('.json'), summary)
    summary['files'] = [str(csv_path), str(svg_path), str(json_path)]
    return success_response(summary, message)
