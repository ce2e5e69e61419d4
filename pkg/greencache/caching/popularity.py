"""
Content popularity as a continuous power law over ranks f >= 1:

    f_pop(f, eta) = (eta - 1) f^(-eta),   f >= 1

A cache holding the f0 most popular ranks serves a request with probability
1 - f0^(1 - eta). The density vanishes below rank 1, so the hit integral
starts there.
"""

from dataclasses import dataclass

import numpy as np

from greencache.base.exceptions import InvalidParameters


@dataclass(frozen=True)
class PopularityModel:
    eta: float

    def __post_init__(self):
        if not self.eta > 1:
            raise InvalidParameters(["eta > 1"])

    def pdf(self, f):
        f = np.asarray(f, dtype=float)
        with np.errstate(divide="ignore"):
            density = (self.eta - 1) * np.power(np.maximum(f, 1.0), -self.eta)
        return np.where(f >= 1, density, 0.0)

    def cdf(self, f):
        f = np.asarray(f, dtype=float)
        return np.where(f >= 1, 1 - np.power(np.maximum(f, 1.0), 1 - self.eta), 0.0)

    def quantile(self, u):
        """Inverse CDF (1 - u)^(-1 / (eta - 1)) for u in [0, 1)."""
        return np.power(1 - np.asarray(u, dtype=float), -1 / (self.eta - 1))


def _check(f0, eta):
    violations = []
    if not f0 >= 1:
        violations.append("f0 >= 1")
    if not eta > 1:
        violations.append("eta > 1")
    if violations:
        raise InvalidParameters(violations)


def miss_probability(f0, eta):
    _check(f0, eta)
    return f0 ** (1 - eta)


def hit_probability(f0, eta):
    return 1 - miss_probability(f0, eta)


def sample_content_ranks(model, rng, size):
    """Draw `size` content ranks by inverse-CDF sampling from `rng`."""
    return model.quantile(rng.random(size))


def sample_content_rank(model, rng):
    return float(sample_content_ranks(model, rng, None))
