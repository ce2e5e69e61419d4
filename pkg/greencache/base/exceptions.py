class GreenCacheError(Exception):
    """Base class for every error raised by greencache."""


class InvalidParameters(GreenCacheError, ValueError):
    """
    Raised when a parameter set violates the model's constraints.
    `violations` holds one entry per failed constraint, worded as the
    constraint itself (e.g. "lambda_u > lambda_b").
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid parameters")


class NonConvergence(GreenCacheError):
    """Quadrature could not meet its tolerance within the evaluation budget."""


class NoMinimum(GreenCacheError):
    """The objective has no interior minimum (e.g. pathloss exponent <= 4)."""


class BracketFailure(GreenCacheError):
    """The objective was still decreasing at the largest allowed bracket."""


class EmptyWindow(GreenCacheError):
    """A sampled network realization contains no base station."""


class ConfigError(GreenCacheError):
    """An experiment configuration could not be read or merged."""
