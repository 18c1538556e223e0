"""Exception types shared across the package."""


class MqmError(Exception):
    """Base class for all library errors."""


class ConfigError(MqmError):
    """A metric or bundled resource is unusable as configured."""


class FormatError(MqmError):
    """An input document violates its format or invariants."""


class UnknownErrorTypeError(FormatError):
    """A cell references an error type that is not in the metric's typology."""


class UnknownSeverityError(FormatError):
    """A cell references a severity level the metric does not define."""


class CurveFitError(MqmError):
    """Tolerance-curve fitting failed or produced an invalid curve."""


class ValidityRangeError(MqmError):
    """A sample size falls outside a tolerance curve's validity range."""


class PlanSearchError(MqmError):
    """No sampling plan satisfies the risk bounds within the search limit."""


class NotFoundError(MqmError):
    """A stored entity does not exist."""
