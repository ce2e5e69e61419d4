"""
Value types holding every symbol of the system model. All quantities are
linear-scale; densities are points per unit area.
"""

import dataclasses
from dataclasses import dataclass

from scipy import constants


@dataclass(frozen=True)
class NoiseModel:
    """
    Background noise of the typical user. Either the physical constituents
    (bandwidth B in Hz, linear noise figure F, temperature T in K and
    Boltzmann's constant k) or a direct `beta_override` are supplied. The
    noise variance is sigma^2 = beta * lambda_b with
    beta = B * (1 / lambda_u) * (F k T / b).
    """

    beta_override: float | None = None
    bandwidth: float | None = None
    noise_figure: float | None = None
    temperature: float | None = None
    boltzmann: float = constants.k

    @classmethod
    def direct(cls, beta):
        return cls(beta_override=beta)

    @classmethod
    def thermal(cls, bandwidth, noise_figure, temperature=290.0, boltzmann=constants.k):
        return cls(
            bandwidth=bandwidth,
            noise_figure=noise_figure,
            temperature=temperature,
            boltzmann=boltzmann,
        )

    @property
    def is_direct(self):
        return self.beta_override is not None

    def constituents(self):
        return (self.bandwidth, self.noise_figure, self.temperature, self.boltzmann)

    def beta(self, lambda_u, b):
        if self.is_direct:
            return self.beta_override
        return (
            self.bandwidth
            * (1 / lambda_u)
            * (self.noise_figure * self.boltzmann * self.temperature / b)
        )


@dataclass(frozen=True)
class NetworkParams:
    """
    Single-tier PPP deployment: BS density `lambda_b`, user density
    `lambda_u`, pathloss g(r) = b r^-alpha, target SINR `gamma` and the
    noise model. `b` defaults to a normalized pathloss coefficient.
    """

    lambda_b: float
    lambda_u: float
    alpha: float
    gamma: float
    b: float = 1.0
    noise: NoiseModel = NoiseModel(beta_override=0.0)

    @property
    def beta(self):
        return self.noise.beta(self.lambda_u, self.b)

    @property
    def eta(self):
        # Average number of users per BS; doubles as the popularity steepness.
        return self.lambda_u / self.lambda_b

    @property
    def epsilon(self):
        return self.alpha - 4

    def sigma_sq(self, lambda_b=None):
        if lambda_b is None:
            lambda_b = self.lambda_b
        return self.beta * lambda_b

    def pathloss(self, r):
        return self.b * r ** (-self.alpha)

    def with_density(self, lambda_b):
        return dataclasses.replace(self, lambda_b=lambda_b)

    def as_dict(self):
        data = {
            "lambda_b": self.lambda_b,
            "lambda_u": self.lambda_u,
            "alpha": self.alpha,
            "gamma": self.gamma,
            "b": self.b,
        }
        if self.noise.is_direct:
            data["beta"] = self.noise.beta_override
        else:
            data.update(
                bandwidth=self.noise.bandwidth,
                noise_figure=self.noise.noise_figure,
                temperature=self.noise.temperature,
            )
        return data
