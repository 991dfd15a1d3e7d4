"""
Resolvent Command
Norm of the resolvent along the imaginary axis and its growth exponent
"""
import click
from flask import Blueprint, current_app, g

from dampinglab.analysis.fitting import MIN_FIT_POINTS, fit_power_law
from dampinglab.analysis.resolvent import GrowthFit, resolvent_profile
from dampinglab.analysis.stability import Verdict, classify
from dampinglab.errors.exceptions import InsufficientRange
from dampinglab.middleware.inputs import model_options, require_model
from dampinglab.utils.responses import success_response, write_atomic, write_csv, write_json
from dampinglab.utils.svg import Curve, SvgStyle, emit_svg

resolvent_bp = Blueprint('resolvent', __name__, cli_group=None)

PROFILE_HEADER = ('lambda', 'norm', 'maximizing_s')


@resolvent_bp.cli.command('resolvent')
@model_options
@click.option('--lambda-min', type=float, default=None, help='Lower end of the lambda range')
@click.option('--lambda-max', type=float, default=None, help='Upper end of the lambda range')
@click.option('--lambda-count', type=int, default=None, help='Log-grid points')
@require_model(fallbacks={'lambda_min': 10.0, 'lambda_max': 1e3, 'lambda_count': 400})
def resolvent_command():
    """
    Tabulate ||(i lambda - A)^-1|| and fit the envelope exponent

    The exponent is only fitted for semiuniformly stable models; the
    profile is written for every model.

    Writes:
        <model>_resolvent.csv: lambda, norm, maximizing_s
        <model>_resolvent.svg: log-log profile
        <model>_resolvent.json: verdict, supremum and envelope fit
    """
    model, settings = g.model, g.settings
    profile = resolvent_profile(
        model.damping, model.spectrum,
        lambda_range=(settings.lambda_min, settings.lambda_max),
        budget=settings.budget,
        count=settings.lambda_count,
    )

    stem = settings.output_dir / f'{model.name}_resolvent'
    files = [write_csv(stem.with_suffix('.csv'), PROFILE_HEADER, profile.rows())]
    if profile.norms.size:
        curve = Curve(profile.lambdas, profile.norms, label='resolvent', xlabel='lambda', ylabel='norm')
        files.append(write_atomic(stem.with_suffix('.svg'),
                                  emit_svg(curve, SvgStyle(title=f'resolvent norm, {model.name}'))))

    verdict = classify(model.damping, model.spectrum, settings.budget).verdict
    summary = {
        'run': settings.describe(),
        'verdict': verdict.value,
        'points': int(profile.norms.size),
        'sup_norm': float(profile.norms.max()) if profile.norms.size else None,
        'warnings': list(profile.warnings),
        'fit': None,
    }
    message = f'{profile.norms.size} resolvent norms written'

    if verdict is Verdict.SEMIUNIFORM:
        try:
            growth = GrowthFit(profile, fit_power_law(*profile.envelope(), MIN_FIT_POINTS))
            summary['fit'] = growth.to_dict()
            message = f'resolvent exponent {growth.exponent:.4g}'
        except InsufficientRange as error:
            current_app.logger.warning(f'envelope fit skipped: {error}')

    files.append(write_json(stem.with_suffix('.json'), summary))
    summary['files'] = [str(path) for path in files]
    return success_response(summary, message)
