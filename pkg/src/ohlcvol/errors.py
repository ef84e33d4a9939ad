"""Exception hierarchy shared across the package.

Everything derives from :class:`OhlcVolError` so callers can catch one base
class; argument-style errors additionally derive from ``ValueError``.
"""


class OhlcVolError(Exception):
    """Base class for all errors raised by ohlcvol."""


# --- series validation ------------------------------------------------------

class ValidationError(OhlcVolError):
    """An input price series violates a structural invariant."""


class NonPositivePrice(ValidationError):
    pass


class EnvelopeViolation(ValidationError):
    """High below max(open, close), or low above min(open, close)."""


class NonMonotonicDates(ValidationError):
    pass


class MonthGap(ValidationError):
    """Periods are not consecutive calendar months."""


class DuplicateMonth(ValidationError):
    pass


class LengthMismatch(OhlcVolError, ValueError):
    pass


# --- distribution / model errors --------------------------------------------

class NonPositiveShape(OhlcVolError, ValueError):
    """GED shape parameter must be strictly positive."""


class ProbabilityOutOfRange(OhlcVolError, ValueError):
    pass


class NoConvergence(OhlcVolError):
    """An iterative procedure failed to reach its tolerance."""


class InvalidD(OhlcVolError, ValueError):
    """Fractional differencing order outside [0, 1]."""


class InadmissibleParams(OhlcVolError):
    """Model parameters outside the admissible region."""


class NegativeWeight(InadmissibleParams):
    """A truncated ARCH(inf) weight is materially negative."""


class NonFiniteVariance(OhlcVolError):
    """The variance filter produced a non-positive or non-finite value."""


class NoAdmissibleStart(OhlcVolError):
    """No optimizer starting point satisfied the admissibility checks."""


class InvalidParams(OhlcVolError, ValueError):
    """Simulation settings outside their valid domain."""


# --- estimator / indicator errors --------------------------------------------

class WindowTooShort(OhlcVolError, ValueError):
    pass


class MissingOvernight(OhlcVolError):
    """Estimator needs overnight returns but the series has none."""


class EmptyInput(OhlcVolError, ValueError):
    pass


class SeriesTooShort(OhlcVolError, ValueError):
    pass


class InsufficientHistory(OhlcVolError):
    """Not enough defined observations to apply the detection rule."""


# --- ingestion ---------------------------------------------------------------

class ParseError(OhlcVolError):
    """A CSV row or header could not be parsed; message names row and column."""
