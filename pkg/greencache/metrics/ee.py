"""
Energy efficiency at a fixed BS density: area spectral efficiency over
per-BS total power,

    E(P) = lambda_b ln(1 + gamma) P_cov^NN (1 - c / P) / (P + K),

with K = P_s + P_d f0^(1 - eta) when caching and K = P_s + P_d without. The
correction coefficient c follows the configured convention.
"""

import math
from dataclasses import dataclass

from django.conf import settings

from greencache.caching.popularity import miss_probability
from greencache.caching.power import CachePowerParams
from greencache.coverage.analytic import correction_coefficient, coverage_nn
from greencache.coverage.choices import CorrectionConvention
from greencache.metrics.apc import check_transmit_power
from greencache.metrics.choices import Mode
from greencache.network.params import NetworkParams


@dataclass(frozen=True)
class EeQuery:
    power_params: CachePowerParams
    network: NetworkParams
    convention: CorrectionConvention | None = None
    # Overrides the no-noise coverage derived from (alpha, gamma).
    pcov_nn: float | None = None

    def __post_init__(self):
        if self.convention is None:
            object.__setattr__(
                self,
                "convention",
                CorrectionConvention(settings.EE_CORRECTION_CONVENTION),
            )

    @property
    def correction(self):
        return correction_coefficient(self.network, self.convention)

    @property
    def coverage(self):
        if self.pcov_nn is not None:
            return self.pcov_nn
        return coverage_nn(self.network)

    @property
    def spectral_scale(self):
        network = self.network
        return network.lambda_b * math.log1p(network.gamma) * self.coverage

    def load(self, mode):
        """K: the power drawn on top of P."""
        power = self.power_params
        if mode == Mode.UNCACHED:
            miss = 1.0
        else:
            miss = miss_probability(power.f0, self.network.eta)
        return power.static + power.differential * miss


def ee(q, transmit_power, mode):
    check_transmit_power(transmit_power)
    c = q.correction
    return (
        q.spectral_scale
        * (1 - c / transmit_power)
        / (transmit_power + q.load(mode))
    )


def ee_cached(q, transmit_power):
    return ee(q, transmit_power, Mode.CACHED)


def ee_uncached(q, transmit_power):
    return ee(q, transmit_power, Mode.UNCACHED)


def ee_derivative(q, transmit_power, mode):
    """dE/dP = -B (P^2 - 2 c P - c K) / (P^2 (P + K)^2)."""
    check_transmit_power(transmit_power)
    p = transmit_power
    c = q.correction
    load = q.load(mode)
    return -q.spectral_scale * (p * p - 2 * c * p - c * load) / (p * p * (p + load) ** 2)
