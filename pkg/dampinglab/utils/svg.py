"""
SVG Figures

Static portraits and decay curves drawn with matplotlib's object API
(no pyplot state). Output is byte-stable for fixed input: ids are salted
with a constant, the date metadata is dropped and data are rounded to
six significant digits before drawing.
"""
from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Sequence

import matplotlib
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure

from dampinglab.analysis.generator_spectrum import GeneratorPortrait, PointLabel
from dampinglab.utils.responses import SVG_DIGITS

RC_SETTINGS = {
    'svg.hashsalt': 'dampinglab',
    'svg.fonttype': 'none',
    'path.simplify': False,
}

LABEL_MARKERS = {
    PointLabel.XI_PLUS: ('o', '#1f77b4'),
    PointLabel.XI_MINUS: ('s', '#ff7f0e'),
    PointLabel.LAMBDA_POINT: ('D', '#2ca02c'),
    PointLabel.ZERO: ('X', '#d62728'),
}


@dataclass(frozen=True)
class Curve:
    x: Sequence[float]
    y: Sequence[float]
    label: str = 'curve'
    loglog: bool = True
    xlabel: str = 't'
    ylabel: str = ''


@dataclass(frozen=True)
class SvgStyle:
    title: str = ''
    width: float = 6.4
    height: float = 4.8
    marker_size: float = 12.0


def _rounded(values) -> list[float]:
    return [float(f'{float(value):.{SVG_DIGITS}g}') for value in values]


def _draw_portrait(axes, portrait: GeneratorPortrait, style: SvgStyle) -> None:
    axes.axhline(0.0, color='0.6', linewidth=0.8, gid='real-axis')
    axes.axvline(0.0, color='0.6', linewidth=0.8, gid='imaginary-axis')
    for label, (marker, color) in LABEL_MARKERS.items():
        points = [point.value for point in portrait.points if point.label is label]
        if not points:
            continue
        axes.scatter(_rounded(p.real for p in points), _rounded(p.imag for p in points),
                     s=style.marker_size, marker=marker, color=color, label=label.value,
                     gid=f'points-{label.value}')
    axes.set_xlabel('Re')
    axes.set_ylabel('Im')
    axes.legend(loc='best')


def _draw_curves(axes, curves: Sequence[Curve]) -> None:
    for curve in curves:
        axes.plot(_rounded(curve.x), _rounded(curve.y), label=curve.label, gid=f'curve-{curve.label}')
        if curve.loglog:
            axes.set_xscale('log')
            axes.set_yscale('log')
    axes.set_xlabel(curves[0].xlabel)
    axes.set_ylabel(curves[0].ylabel)
    if len(curves) > 1:
        axes.legend(loc='best')


def emit_svg(figure_data: GeneratorPortrait | Curve | Sequence[Curve], style: SvgStyle | None = None) -> str:
    """
    Render a portrait scatter or one or more curves as an SVG 1.1 document

    Raises:
        ValueError: nothing to draw
    """
    style = style or SvgStyle()
    if isinstance(figure_data, Curve):
        figure_data = [figure_data]
    if isinstance(figure_data, GeneratorPortrait):
        if not figure_data.points:
            raise ValueError('portrait has no points')
    elif not figure_data or any(len(curve.x) == 0 for curve in figure_data):
        raise ValueError('curve has no points')

    with matplotlib.rc_context(RC_SETTINGS):
        figure = Figure(figsize=(style.width, style.height))
        FigureCanvasSVG(figure)
        axes = figure.add_subplot()
        if isinstance(figure_data, GeneratorPortrait):
            _draw_portrait(axes, figure_data, style)
        else:
            _draw_curves(axes, list(figure_data))
        if style.title:
            axes.set_title(style.title)

        buffer = io.StringIO()
        figure.savefig(buffer, format='svg', metadata={'Date': None})
    return buffer.getvalue()
