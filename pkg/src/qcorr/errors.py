"""Exception hierarchy. The CLI maps these onto exit statuses."""


class QcorrError(Exception):
    """Base class for library errors."""


class DimensionError(QcorrError, ValueError):
    """Subsystem dimensions do not match the operator they describe."""


class NotHermitianError(QcorrError, ValueError):
    pass


class InvalidStateError(QcorrError, ValueError):
    """A matrix fails the density-operator checks (trace, positivity)."""


class UnsupportedDimensionError(QcorrError, ValueError):
    """The requested measure is not implemented for these subsystem sizes."""
