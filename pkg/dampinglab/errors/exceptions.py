"""
Laboratory Exceptions
"""


class LabError(Exception):
    """Base class for every error raised by the laboratory"""
    name = 'LabError'
    exit_code = 1

    def __init__(self, message: str = '', details: dict | None = None):
        super().__init__(message or self.name)
        self.details = details or {}


class NonPositivePoint(LabError):
    """A spectrum point is not strictly positive"""
    name = 'NonPositivePoint'


class EmptySpectrum(LabError):
    """A spectrum description with no points and no intervals"""
    name = 'EmptySpectrum'


class InvalidParameter(LabError):
    """A model, damping or sampling parameter is outside its admissible range"""
    name = 'InvalidParameter'


class OutOfRange(LabError):
    """Tabulated damping evaluated outside its knots with no tail metadata"""
    name = 'OutOfRange'


class NotBijective(LabError):
    """The generator is not invertible (0 lies in its spectrum)"""
    name = 'NotBijective'


class OnSpectrum(LabError):
    """The requested resolvent point lies on the spectrum of the generator"""
    name = 'OnSpectrum'


class InsufficientRange(LabError):
    """Too few certified points for a reliable fit"""
    name = 'InsufficientRange'


class NotSemiuniform(LabError):
    """An operation requiring a semiuniformly (not exponentially) stable semigroup"""
    name = 'NotSemiuniform'


class ConfigError(LabError):
    """Invalid run configuration, with line diagnostics when read from a file"""
    name = 'ConfigError'
    exit_code = 2
