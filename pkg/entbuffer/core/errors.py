"""Exception hierarchy for entbuffer."""
from typing import Optional


class EntBufferError(Exception):
    """Base class for toolkit errors."""


class DomainError(EntBufferError, ValueError):
    """A numeric input lies outside the domain of an operation."""


class NotPurifiableError(DomainError):
    """The fresh state is not entangled (F <= 1/2), so pumping cannot help."""


class DegenerateSystemError(EntBufferError, ArithmeticError):
    """The parameters make a formula singular or leave no stationary law."""


class ProtocolDegenerateError(DegenerateSystemError):
    """A purification circuit never succeeds, or its fitted jump is inconsistent."""


class AnalyticsUnavailableError(EntBufferError, ValueError):
    """Closed forms need a constant success probability (rational jump with c = 0)."""


class InsufficientSamplesError(EntBufferError, RuntimeError):
    """Fewer than two replications ended with a stored link."""

    def __init__(self, message: str, availability: float, n_samples: int, n_nonempty: int,
                 stderr_availability: Optional[float] = None):
        super().__init__(message)
        self.availability = availability
        self.stderr_availability = stderr_availability
        self.n_samples = n_samples
        self.n_nonempty = n_nonempty
