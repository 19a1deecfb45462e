"""Exception types shared across the toolkit.

NumericFailure marks results that must not be trusted (exit code 3 in the
CLI); the ValueError subclasses mark bad requests (exit code 2).
"""


class NumericFailure(RuntimeError):
    """A numeric procedure could not produce a trustworthy result."""


class ConvergenceError(NumericFailure):
    """An iterative solver exhausted its iteration budget."""


class TailGuardError(NumericFailure):
    """A scan-based minimum may lie beyond the scanned range."""


class CutoffExceededError(NumericFailure):
    """A spectral query went above the enumerated cutoff."""


class InsufficientCutoffError(NumericFailure):
    """An enumerated spectrum holds too few eigenvalues for the request."""


class EnumerationLimitError(NumericFailure):
    """Eigenvalue enumeration would exceed the configured entry limit."""


class UnsupportedDomainError(ValueError):
    """The requested quantity is not available for this domain class."""


class DomainParseError(ValueError):
    """A domain description string does not match the grammar."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position
