"""
Per-BS power consumption. A BS draws its transmit power P, an operational
power P_o and the storage power P_hd on every request; a cache miss adds the
backhaul power P_bh in place of the storage read. Grouping terms,

    P_tot = P + P_s + P_d * miss,   P_s = P_o + P_hd,   P_d = P_bh - P_hd.

Without a cache every request misses (miss = 1).
"""

import dataclasses
import math
from dataclasses import dataclass

from greencache.base.exceptions import InvalidParameters
from greencache.caching.popularity import miss_probability


@dataclass(frozen=True)
class CachePowerParams:
    p_tx: float
    p_o: float
    p_hd: float
    p_bh: float
    f0: float = 1.0

    def __post_init__(self):
        violations = []
        values = (self.p_tx, self.p_o, self.p_hd, self.p_bh, self.f0)
        if not all(math.isfinite(value) for value in values):
            violations.append("power parameters are finite")
        else:
            if self.p_tx < 0:
                violations.append("p_tx >= 0")
            if self.p_o < 0:
                violations.append("p_o >= 0")
            if self.p_hd < 0:
                violations.append("p_hd >= 0")
            if self.p_bh <= self.p_hd:
                violations.append("p_bh > p_hd")
            if self.f0 < 1:
                violations.append("f0 >= 1")
        if violations:
            raise InvalidParameters(violations)

    @classmethod
    def from_aggregates(cls, static, differential, *, p_tx=0.0, f0=1.0, disk=0.0):
        """Build the components from the aggregates P_s and P_d."""
        return cls(
            p_tx=p_tx,
            p_o=static - disk,
            p_hd=disk,
            p_bh=disk + differential,
            f0=f0,
        )

    @property
    def static(self):
        return self.p_o + self.p_hd

    @property
    def differential(self):
        return self.p_bh - self.p_hd

    def with_transmit_power(self, p_tx):
        return dataclasses.replace(self, p_tx=p_tx)

    def with_catalog(self, f0):
        return dataclasses.replace(self, f0=f0)

    def total_power(self, miss, p_tx=None):
        if p_tx is None:
            p_tx = self.p_tx
        return p_tx + self.static + self.differential * miss


def total_power_cached(p, eta):
    return p.total_power(miss_probability(p.f0, eta))


def total_power_uncached(p):
    return p.total_power(1.0)
