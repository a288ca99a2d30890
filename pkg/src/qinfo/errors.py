"""Exception hierarchy."""


class QInfoError(Exception):
    """Base class for all library errors."""


class ValidationError(QInfoError, ValueError):
    """Input failed a state or distribution validity check."""


class NotHermitianError(ValidationError):
    pass


class TraceError(ValidationError):
    pass


class NegativeEigenvalueError(ValidationError):
    pass


class NotNormalizedError(ValidationError):
    pass


class ArgumentError(QInfoError, ValueError):
    """An argument is out of its allowed range."""


class DimensionError(QInfoError, ValueError):
    """Matrix or state dimension is unsupported or exceeds the qubit cap."""


class ConsistencyError(QInfoError, ValueError):
    """Two inputs that must describe the same state disagree."""


class PrecisionError(QInfoError, ValueError):
    """Requested precision is not exactly representable."""
