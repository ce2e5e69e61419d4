"""
Area power consumption: BS density times per-BS total power.

Under the QoS-boundary rule the density is A P^-s with s = 2 / (alpha - 2),
which also makes the popularity steepness eta = (lambda_u / A) P^s depend on P:

    APC(P) = A P^-s (P + P_s + P_d f0^(1 - (lambda_u / A) P^s))

Under the fixed rule the density and eta stay at the network's values.
"""

import math
from dataclasses import dataclass

from greencache.base.exceptions import InvalidParameters
from greencache.caching.power import CachePowerParams
from greencache.metrics.choices import DensityRule, Mode
from greencache.network.constants import a_prime, density_constant
from greencache.network.params import NetworkParams


@dataclass(frozen=True)
class ApcQuery:
    power_params: CachePowerParams
    network: NetworkParams
    mode: Mode = Mode.CACHED
    density_rule: DensityRule = DensityRule.QOS_BOUNDARY
    # Overrides A derived from the noise parameters.
    density_constant: float | None = None

    @property
    def epsilon(self):
        return self.network.alpha - 4

    @property
    def exponent(self):
        return 2 / (self.network.alpha - 2)

    @property
    def constant(self):
        if self.density_constant is not None:
            a = self.density_constant
        else:
            network = self.network
            a = density_constant(
                a_prime(network.beta, network.alpha, network.b), network.alpha
            )
        if not a > 0:
            raise InvalidParameters(["A > 0"])
        return a

    def density(self, transmit_power):
        if self.density_rule == DensityRule.FIXED:
            return self.network.lambda_b
        return self.constant * transmit_power ** (-self.exponent)

    def eta(self, transmit_power):
        return self.network.lambda_u / self.density(transmit_power)


def check_transmit_power(transmit_power):
    if not transmit_power > 0:
        raise InvalidParameters(["P > 0"])


def apc_cached(q, transmit_power):
    check_transmit_power(transmit_power)
    # eta(P) may drop below 1 at small P under the QoS rule; the closed form
    # is still evaluated as written there.
    miss = q.power_params.f0 ** (1 - q.eta(transmit_power))
    total = q.power_params.total_power(miss, p_tx=transmit_power)
    return q.density(transmit_power) * total


def apc_uncached(q, transmit_power):
    check_transmit_power(transmit_power)
    total = q.power_params.total_power(1.0, p_tx=transmit_power)
    return q.density(transmit_power) * total


def apc(q, transmit_power):
    if q.mode == Mode.UNCACHED:
        return apc_uncached(q, transmit_power)
    return apc_cached(q, transmit_power)


def apc_derivative(q, transmit_power):
    """Analytic dAPC/dP for the query's mode and density rule."""
    check_transmit_power(transmit_power)
    if q.density_rule == DensityRule.FIXED:
        return q.network.lambda_b

    p = transmit_power
    s = q.exponent
    a = q.constant
    power = q.power_params

    if q.mode == Mode.UNCACHED:
        load = power.static + power.differential
        return a * p ** (-s - 1) * ((1 - s) * p - s * load)

    rate = q.network.lambda_u / a
    miss = power.f0 ** (1 - rate * p**s)
    miss_slope = -miss * math.log(power.f0) * rate * s * p ** (s - 1)
    return a * (
        (1 - s) * p ** (-s)
        - s * p ** (-s - 1) * (power.static + power.differential * miss)
        + p ** (-s) * power.differential * miss_slope
    )
