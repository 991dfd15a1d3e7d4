"""
Table Command
Classification over a grid of damping exponents
"""
import click
from flask import Blueprint, g

from dampinglab.analysis.stability import TABLE_HEADER, classification_table
from dampinglab.middleware.inputs import model_options, require_model
from dampinglab.utils.responses import success_response, write_csv

table_bp = Blueprint('table', __name__, cli_group=None)

TABLE_FAMILIES = ('wave', 'beam', 'beam-rot')


@table_bp.cli.command('table')
@model_options
@click.option('--family', type=click.Choice(TABLE_FAMILIES), default=None, help='Model family')
@click.option('--grid', type=str, default=None, help="theta grid, 'start:stop:step' or a comma list")
@require_model(needs_model=False)
def table_command():
    """Write one classification row per theta of the grid to <family>_table.csv"""
    settings = g.settings
    family = settings.family
    params = {}
    if family == 'beam-rot':
        params['omega'] = settings.params.get('omega', 1.0)

    rows = classification_table(family, settings.grid, settings.budget, **params)
    path = write_csv(settings.output_dir / f'{family}_table.csv', TABLE_HEADER, (row.as_row() for row in rows))

    counts = {}
    for row in rows:
        counts[row.verdict.value] = counts.get(row.verdict.value, 0) + 1

    data = {'family': family, 'parameters': params, 'rows': len(rows), 'verdicts': counts, 'files': [str(path)]}
    return success_response(data, f'{len(rows)} classifications written')
