"""
Global Error Handlers for CLI commands
"""
from functools import wraps

import click
from flask import current_app

from dampinglab.errors.exceptions import LabError
from dampinglab.utils.responses import error_response


def _guard(callback):
    @wraps(callback)
    def guarded(*args, **kwargs):
        try:
            return callback(*args, **kwargs)
        except LabError as error:
            current_app.logger.warning(f'{error.name}: {error}')
            code = error_response(error.name, str(error), error.exit_code, error.details)
            click.get_current_context().exit(code)
        except (click.exceptions.Exit, click.ClickException, click.exceptions.Abort):
            raise
        except Exception as error:
            # Log the error for debugging
            current_app.logger.error(f'Unhandled exception: {str(error)}', exc_info=True)
            code = error_response('Internal error', 'An unexpected error occurred', 1)
            click.get_current_context().exit(code)

    guarded.lab_guarded = True
    return guarded


def register_error_handlers(app):
    """Wrap every registered CLI command so lab errors become exit codes

    Must run after the command blueprints are registered. Command objects
    are shared between apps built from the same blueprints, so wrapping
    happens once.
    """
    for command in app.cli.commands.values():
        callback = command.callback
        if callback is not None and not getattr(callback, 'lab_guarded', False):
            command.callback = _guard(callback)
