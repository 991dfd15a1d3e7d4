"""
Classify Command
"""
from flask import Blueprint, g

from dampinglab.analysis.stability import classify
from dampinglab.middleware.inputs import model_options, require_model
from dampinglab.utils.responses import success_response, write_json

classify_bp = Blueprint('classify', __name__, cli_group=None)


@classify_bp.cli.command('classify')
@model_options
@require_model()
def classify_command():
    """Classify the stability of a model and write its StabilityReport as JSON"""
    model, settings = g.model, g.settings
    report = classify(model.damping, model.spectrum, settings.budget)

    payload = {'run': settings.describe(), 'report': report.to_dict()}
    path = write_json(settings.output_dir / f'{model.name}_classify.json', payload)

    payload['files'] = [str(path)]
    return success_response(payload, f'{model.name}: {report.verdict.value}')
