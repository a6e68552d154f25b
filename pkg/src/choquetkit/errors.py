"""Exception types shared across the toolkit."""


class CapabilityError(Exception):
    """Requested computation exceeds what the implementation supports
    (ground set too large for enumeration, unsupported function family, ...)."""


class DivergenceError(Exception):
    """The integrand does not decay, so the Choquet integral diverges."""


class QuadratureError(Exception):
    """Adaptive quadrature failed to converge to the requested tolerances.

    Carries the best available partial value and its error estimate.
    """

    def __init__(self, message: str, value: float, error_estimate: float):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


class ConfigError(ValueError):
    """Experiment configuration is invalid."""
