"""Exception types shared across the package."""


class IntegrationError(RuntimeError):
    """Adaptive quadrature failed to converge.

    Carries the partial estimate and the integrator's error estimate so
    callers can decide whether the result is still usable.
    """

    def __init__(self, message, partial=None, error_estimate=None):
        super().__init__(message)
        self.partial = partial
        self.error_estimate = error_estimate


class DominanceError(ValueError):
    """Mean-difference shortcut requested for a pair whose CDFs cross."""


class ConsistencyError(RuntimeError):
    """Two independent evaluation routes disagree beyond their tolerance."""


class TruncationError(RuntimeError):
    """No truncation below the hard cap achieves the certified tail target."""


class ToleranceError(RuntimeError):
    """A computed value deviates from its analytic reference beyond tolerance."""
