"""Exception types shared across the package."""


class DegenerateMomentumError(ValueError):
    """Momentum where the piecewise exponential basis degenerates (k=0, or Q=0 inside the shell)."""


class OutOfSpectrumError(ValueError):
    """Energy outside the continuous spectrum (E <= 0)."""


class DecayError(ValueError):
    """Test function decays too slowly for the requested analytic continuation."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature could not meet the requested tolerance.

    Attributes
    ----------
    value : complex
        Best available estimate of the integral.
    estimate : float
        Achieved absolute error estimate.
    """

    def __init__(self, message, value=None, estimate=None):
        super().__init__(message)
        self.value = value
        self.estimate = estimate


class BoundaryZeroError(RuntimeError):
    """A Jost function vanishes on (or too close to) a search-region boundary after retries."""


class RefinementError(RuntimeError):
    """Newton refinement of a zero failed to converge.

    Carries the best iterate found so far in ``best_iterate`` and its
    residual in ``residual``.
    """

    def __init__(self, message, best_iterate=None, residual=None):
        super().__init__(message)
        self.best_iterate = best_iterate
        self.residual = residual


class ConfigError(ValueError):
    """Run configuration failed schema or invariant validation."""
