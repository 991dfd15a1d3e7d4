"""
Errors and error handlers
"""
from dampinglab.errors.exceptions import (
    LabError,
    NonPositivePoint,
    EmptySpectrum,
    InvalidParameter,
    OutOfRange,
    NotBijective,
    OnSpectrum,
    InsufficientRange,
    NotSemiuniform,
    ConfigError
)
from dampinglab.errors.handlers import register_error_handlers

__all__ = [
    'LabError',
    'NonPositivePoint',
    'EmptySpectrum',
    'InvalidParameter',
    'OutOfRange',
    'NotBijective',
    'OnSpectrum',
    'InsufficientRange',
    'NotSemiuniform',
    'ConfigError',
    'register_error_handlers'
]
