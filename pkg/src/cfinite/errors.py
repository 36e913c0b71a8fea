"""Exception types shared across the package."""


class CFiniteError(Exception):
    """Base class for errors raised by this package."""


class ResourceLimitError(CFiniteError):
    """A brute-force operation exceeded its configured size cap."""


class InsufficientDataError(CFiniteError):
    """A sequence does not supply enough terms for the requested operation."""


class DimensionError(CFiniteError):
    """Matrix dimensions violate an operation's precondition."""


class MixedRadicandError(CFiniteError):
    """Arithmetic between quadratic field elements with different radicands."""


class RootFindingError(CFiniteError):
    """The numeric root stage failed to reach the requested tolerance."""


class SingularSystemError(CFiniteError):
    """An exact or numeric linear solve hit an unexpectedly singular system."""


class CertificateError(CFiniteError):
    """A certificate failed validation; the message names the failing check."""


class BFileError(CFiniteError):
    """Malformed b-file input; carries the 1-based line number when known."""

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number
