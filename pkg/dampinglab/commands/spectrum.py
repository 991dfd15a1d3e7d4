"""
Spectrum Command
Portrait of the generator spectrum as CSV rows and an SVG scatter
"""
from flask import Blueprint, g

from dampinglab.analysis.generator_spectrum import imaginary_spectrum, portrait, regime_summary
from dampinglab.middleware.inputs import model_options, require_model
from dampinglab.utils.responses import success_response, write_atomic, write_csv, write_json
from dampinglab.utils.svg import SvgStyle, emit_svg

spectrum_bp = Blueprint('spectrum', __name__, cli_group=None)

PORTRAIT_HEADER = ('s_or_ell', 'label', 're', 'im', 'eigenvalue_flag', 'regime')


def _title(model) -> str:
    parameters = ', '.join(f'{name}={value:g}' for name, value in model.parameters.items())
    return f'{model.name} ({parameters})' if parameters else model.name


@spectrum_bp.cli.command('spectrum')
@model_options
@require_model()
def spectrum_command():
    """
    Compute the spectrum of the generator

    Writes:
        <model>_spectrum.csv: one row per point (s_or_ell, label, re, im, eigenvalue_flag, regime)
        <model>_spectrum.svg: complex-plane scatter, one group per point label
        <model>_spectrum.json: summary with spectral bound and regime counts
    """
    model, settings = g.model, g.settings
    result = portrait(model.damping, model.spectrum, settings.budget)

    stem = settings.output_dir / f'{model.name}_spectrum'
    csv_path = write_csv(stem.with_suffix('.csv'), PORTRAIT_HEADER, result.rows())
    svg_path = write_atomic(stem.with_suffix('.svg'), emit_svg(result, SvgStyle(title=_title(model))))

    summary = {
        'run': settings.describe(),
        'portrait': result.to_dict(),
        'regimes': regime_summary(model.damping, model.spectrum, settings.budget),
        'imaginary_spectrum': imaginary_spectrum(model.damping, model.spectrum, settings.budget).to_dict(),
    }
    json_path = write_json(stem.with_suffix('.json'), summary)

    summary['files'] = [str(csv_path), str(svg_path), str(json_path)]
    return success_response(summary, f'{len(result.points)} spectral points written')
