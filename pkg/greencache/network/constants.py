"""
Constants derived from NetworkParams: C(alpha), A', A, eta, sigma^2 and the
no-noise coverage probability. All are pure functions of the parameters.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

from scipy import special

from greencache.base.exceptions import InvalidParameters
from greencache.network.validators import MAX_PATHLOSS_EXPONENT, validate


@dataclass(frozen=True)
class DerivedConstants:
    c_alpha: float
    a_prime: float
    a: float
    eta: float
    sigma_sq: float
    pcov_nn: float


@lru_cache(maxsize=256)
def c_alpha(alpha):
    """
    C(alpha) = (2 pi^2 / alpha) csc(2 pi / alpha). sin(2 pi / alpha) only
    vanishes for alpha = 2 / n, so C is finite and positive on (2, 200].
    """
    if alpha <= 2:
        raise InvalidParameters(["alpha > 2"])
    if alpha > MAX_PATHLOSS_EXPONENT:
        raise InvalidParameters(["alpha <= {}".format(MAX_PATHLOSS_EXPONENT)])
    return (2 * math.pi**2 / alpha) / math.sin(2 * math.pi / alpha)


@lru_cache(maxsize=256)
def a_prime(beta, alpha, b=1.0):
    """Low-noise correction constant A' = beta Gamma(1 + alpha/2) / (b C^(alpha/2))."""
    return beta * float(special.gamma(1 + alpha / 2)) / (b * c_alpha(alpha) ** (alpha / 2))


def density_constant(a_prime_value, alpha):
    """A = A'^(2 / (alpha - 2)), the constant of the minimal QoS density."""
    return a_prime_value ** (2 / (alpha - 2))


def derive(params):
    report = validate(params)
    if not report.is_valid:
        raise InvalidParameters(report.violations)

    # Avoids a circular import: the coverage app builds on NetworkParams.
    from greencache.coverage.analytic import coverage_nn

    correction = a_prime(params.beta, params.alpha, params.b)
    return DerivedConstants(
        c_alpha=c_alpha(params.alpha),
        a_prime=correction,
        a=density_constant(correction, params.alpha),
        eta=params.eta,
        sigma_sq=params.sigma_sq(),
        pcov_nn=coverage_nn(params),
    )
