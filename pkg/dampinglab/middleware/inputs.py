"""
Input Middleware and Decorators
"""
from functools import wraps

import click
from flask import current_app, g

from dampinglab.analysis.models import PRESETS
from dampinglab.analysis.stability import Verdict, classify
from dampinglab.errors.exceptions import NotSemiuniform
from dampinglab.utils.config_file import build_run_config, read_config_file

# keyword arguments that are run settings rather than command arguments
SETTING_FLAGS = (
    'model', 'theta', 'omega', 'm', 'modes', 'seed', 'output_dir',
    't_min', 't_max', 't_count', 'lambda_min', 'lambda_max', 'lambda_count',
    'family', 'grid', 'initial',
)


def model_options(f):
    """
    Decorator adding the shared model and run flags to a command

    Usage:
        @bp.cli.command('classify')
        @model_options
        @require_model()
        def classify_command():
            ...
    """
    options = [
        click.option('--model', type=click.Choice(list(PRESETS)), default=None, help='Model preset'),
        click.option('--theta', type=float, default=None, help='Damping exponent'),
        click.option('--omega', type=float, default=None, help='Rotational inertia (beam-rot)'),
        click.option('--mass', 'm', type=float, default=None, help='Klein-Gordon mass'),
        click.option('--config', 'config_path', type=click.Path(dir_okay=False), default=None,
                     help='Run config file (KEY=value lines)'),
        click.option('--modes', type=int, default=None, help='Mode budget'),
        click.option('--seed', type=int, default=None, help='Seed for random initial data'),
        click.option('--output-dir', type=click.Path(file_okay=False), default=None, help='Report directory'),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def require_model(fallbacks=None, needs_model=True):
    """
    Decorator resolving flags and the config file into a RunConfig

    Attaches the resolved settings to g.settings and the model preset
    (None when needs_model is False and no model was given) to g.model.

    Args:
        fallbacks: Command defaults, overridden by the config file and flags
        needs_model: False for commands that build their own models
    """
    def decorator(f):
        @wraps(f)
        def decorated_function(*args, **kwargs):
            config_path = kwargs.pop('config_path', None)
            flags = {name: kwargs.pop(name) for name in SETTING_FLAGS if name in kwargs}
            config = read_config_file(config_path) if config_path else None

            command = click.get_current_context().info_name
            g.settings = build_run_config(
                command, flags, config,
                defaults=current_app.config,
                fallbacks=fallbacks,
                needs_model=needs_model,
            )
            g.model = g.settings.model

            if g.model is not None:
                current_app.logger.info(f'{command}: {g.model.name} ({g.settings.source}), '
                                        f'budget {g.settings.budget}')
            return f(*args, **kwargs)

        return decorated_function

    return decorator


def require_semiuniform(f):
    """
    Decorator to require a semiuniformly stable model

    Must be used AFTER @require_model. Attaches the StabilityReport to g.report.
    """
    @wraps(f)
    def decorated_function(*args, **kwargs):
        model = getattr(g, 'model', None)
        if model is None:
            raise NotSemiuniform('no model resolved for this command')

        g.report = classify(model.damping, model.spectrum, g.settings.budget)
        if g.report.verdict is not Verdict.SEMIUNIFORM:
            raise NotSemiuniform(
                f'{model.name} is {g.report.verdict.value}, not semiuniformly stable',
                details={'verdict': g.report.verdict.value},
            )

        return f(*args, **kwargs)

    return decorated_function
