"""
Max-SINR coverage probability of the typical user: exact (one-dimensional
quadrature), no-noise closed form, low-noise approximation, and the minimal
BS density meeting the QoS constraint.

The inner integral of q(P, lambda_b, r) is reduced in closed form before any
quadrature: with g(sqrt(x)) = b x^(-alpha/2),

    int_0^inf pi gamma g(sqrt(x)) / (g(sqrt(r)) + gamma g(sqrt(x))) dx
        = r gamma^(2/alpha) C(alpha),

so q(P, lambda_b, r) = gamma sigma^2 r^(alpha/2) / (P b)
                       + lambda_b r gamma^(2/alpha) C(alpha).
`inner_interference_integral` evaluates the left-hand side by brute force so
the reduction can be checked.
"""

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from django.conf import settings
from scipy import integrate

from greencache.base.exceptions import InvalidParameters, NonConvergence
from greencache.coverage.choices import CorrectionConvention
from greencache.network.constants import a_prime, c_alpha, density_constant

logger = logging.getLogger(__name__)

# QUADPACK's adaptive rule spends 21 evaluations per subinterval.
EVALUATIONS_PER_SUBINTERVAL = 21


@dataclass(frozen=True)
class CoverageQuery:
    params: object
    transmit_power: float

    def __post_init__(self):
        if not self.transmit_power > 0:
            raise InvalidParameters(["P > 0"])


class LowNoiseCoverage(NamedTuple):
    value: float
    # Set when the first-order correction reaches or exceeds 1, i.e. the
    # approximation has left its range of validity.
    breakdown: bool


def _interference_slope(params):
    # Closed form of the inner integral divided by r (lambda_b excluded).
    return params.gamma ** (2 / params.alpha) * c_alpha(params.alpha)


def q_function(query, r):
    params = query.params
    if params.alpha <= 2:
        raise InvalidParameters(["alpha > 2"])
    r = np.asarray(r, dtype=float)
    with np.errstate(over="ignore"):
        noise = (
            params.gamma
            * params.sigma_sq()
            * np.power(r, params.alpha / 2)
            / (query.transmit_power * params.b)
        )
    interference = params.lambda_b * r * _interference_slope(params)
    result = noise + interference
    return float(result) if result.ndim == 0 else result


def inner_interference_integral(params, r):
    """
    Brute-force quadrature of
    int_0^inf pi gamma g(sqrt(x)) / (g(sqrt(r)) + gamma g(sqrt(x))) dx.
    """
    gamma = params.gamma

    def integrand(x):
        # Dividing through by g(sqrt(x)) keeps the integrand finite at x -> 0.
        ratio = (x / r) ** (params.alpha / 2)
        return math.pi * gamma / (ratio + gamma)

    near, _ = integrate.quad(integrand, 0, r, epsabs=0, epsrel=1e-11, limit=200)
    far, _ = integrate.quad(integrand, r, np.inf, epsabs=0, epsrel=1e-11, limit=200)
    return near + far


def coverage_exact(query, *, tolerance=None, budget=None):
    """
    P_cov = pi lambda_b int_0^inf exp(-q(P, lambda_b, r)) dr, integrated on
    [0, 1) after substituting u = r / (1 + r). `tolerance` is the absolute
    error allowed on the probability itself.
    """
    if tolerance is None:
        tolerance = settings.COVERAGE_QUADRATURE_TOLERANCE
    if budget is None:
        budget = settings.COVERAGE_QUADRATURE_BUDGET

    params = query.params
    scale = math.pi * params.lambda_b

    def integrand(u):
        r = u / (1 - u)
        return math.exp(-q_function(query, r)) / (1 - u) ** 2

    result = integrate.quad(
        integrand,
        0,
        1,
        epsabs=tolerance / scale,
        epsrel=tolerance,
        limit=max(1, budget // EVALUATIONS_PER_SUBINTERVAL),
        full_output=1,
    )
    if len(result) == 4:
        raise NonConvergence(
            "coverage quadrature failed for {}: {}".format(query, result[3])
        )
    integral, abserr, info = result
    if info["neval"] > budget:
        raise NonConvergence(
            "coverage quadrature used {} evaluations (budget {})".format(
                info["neval"], budget
            )
        )
    logger.debug(
        "coverage quadrature: %d evaluations, abserr %.3g", info["neval"], abserr
    )

    value = scale * integral
    if -tolerance <= value < 0 or 1 < value <= 1 + tolerance:
        value = min(max(value, 0.0), 1.0)
    elif not 0 <= value <= 1:
        logger.warning("coverage %.12g outside [0, 1] beyond tolerance", value)
    return value


def coverage_nn(params):
    """No-noise coverage pi gamma^(-2/alpha) / C(alpha)."""
    if params.gamma <= 1:
        raise InvalidParameters(["gamma > 1"])
    return math.pi * params.gamma ** (-2 / params.alpha) / c_alpha(params.alpha)


def correction_coefficient(params, convention=CorrectionConvention.DERIVED):
    """The coefficient c of the low-noise correction c / P."""
    if convention == CorrectionConvention.PAPER:
        return 1.0
    constant = a_prime(params.beta, params.alpha, params.b)
    if convention == CorrectionConvention.PRINTED:
        constant = density_constant(constant, params.alpha)
    return constant * params.lambda_b ** (1 - params.alpha / 2)


def coverage_lownoise(query, *, convention=CorrectionConvention.DERIVED):
    """
    First-order low-noise approximation
    P_cov^NN (1 - A' / (lambda_b^(alpha/2 - 1) P)). Values below zero are
    returned as computed with `breakdown` set.
    """
    params = query.params
    correction = correction_coefficient(params, convention) / query.transmit_power
    value = coverage_nn(params) * (1 - correction)
    breakdown = correction >= 1
    if breakdown:
        logger.debug(
            "low-noise approximation out of range at P=%g (correction %.3g)",
            query.transmit_power,
            correction,
        )
    return LowNoiseCoverage(value=value, breakdown=breakdown)


def optimal_density(params, transmit_power, *, a=None):
    """
    Minimal BS density A / P^(2/(alpha - 2)) allowed by the QoS constraint.
    `a` overrides the constant derived from the noise parameters.
    """
    if not transmit_power > 0:
        raise InvalidParameters(["P > 0"])
    if params.alpha <= 2:
        raise InvalidParameters(["alpha > 2"])
    if a is None:
        a = density_constant(a_prime(params.beta, params.alpha, params.b), params.alpha)
    return a * transmit_power ** (-2 / (params.alpha - 2))
