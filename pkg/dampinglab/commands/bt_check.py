"""
Decay/Resolvent Consistency Command
"""
import click
from flask import Blueprint, g

from dampinglab.analysis.resolvent import BT_BUDGET, bt_consistency
from dampinglab.middleware.inputs import model_options, require_model, require_semiuniform
from dampinglab.utils.responses import success_response, write_json

bt_check_bp = Blueprint('bt_check', __name__, cli_group=None)


@bt_check_bp.cli.command('bt-check')
@model_options
@click.option('--t-min', type=float, default=None, help='First time of the psi grid')
@click.option('--t-max', type=float, default=None, help='Last time of the psi grid')
@click.option('--t-count', type=int, default=None, help='Number of psi grid times')
@click.option('--lambda-min', type=float, default=None, help='Lower end of the lambda range')
@click.option('--lambda-max', type=float, default=None, help='Upper end of the lambda range')
@require_model(fallbacks={'modes': BT_BUDGET, 't_min': 10.0, 't_max': 1e4, 't_count': 60})
@require_semiuniform
def bt_check_command():
    """
    Check that resolvent growth lambda^nu matches psi(t) ~ t^(-1/nu)

    Only semiuniformly stable models qualify. Writes <model>_bt_check.json.
    """
    model, settings = g.model, g.settings
    report = bt_consistency(
        model.damping, model.spectrum,
        budget=settings.budget,
        times=settings.log_times(),
        lambda_range=(settings.lambda_min, settings.lambda_max),
    )

    payload = {'run': settings.describe(), 'consistency': report.to_dict()}
    path = write_json(settings.output_dir / f'{model.name}_bt_check.json', payload)

    payload['files'] = [str(path)]
    state = 'consistent' if report.consistent else 'inconsistent'
    return success_response(payload, f'{model.name}: exponents {state}')
