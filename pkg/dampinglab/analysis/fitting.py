"""
Least-squares power-law fits
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from dampinglab.errors.exceptions import InsufficientRange

MIN_FIT_POINTS = 10


@dataclass(frozen=True)
class PowerFit:
    """log y = slope * log x + intercept"""
    slope: float
    intercept: float
    residual: float
    points: int
    x_min: float
    x_max: float

    def to_dict(self) -> dict:
        return {
            'slope': self.slope,
            'intercept': self.intercept,
            'residual': self.residual,
            'points': self.points,
            'range': [self.x_min, self.x_max],
        }


def fit_power_law(x, y, minimum: int = MIN_FIT_POINTS) -> PowerFit:
    """
    Fit y ~ C x^slope on positive data

    Raises:
        InsufficientRange: fewer than `minimum` usable points
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    usable = (x > 0) & (y > 0) & np.isfinite(x) & np.isfinite(y)
    x, y = x[usable], y[usable]
    if x.size < max(minimum, 2):
        raise InsufficientRange(
            f'{x.size} usable points for a power-law fit, need {max(minimum, 2)}',
            details={'points': int(x.size)},
        )

    log_x, log_y = np.log(x), np.log(y)
    slope, intercept = np.polyfit(log_x, log_y, 1)
    residual = float(np.sqrt(np.mean((log_y - (slope * log_x + intercept)) ** 2)))
    return PowerFit(float(slope), float(intercept), residual, int(x.size), float(x.min()), float(x.max()))
