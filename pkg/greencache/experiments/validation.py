"""
Cross-check of the analytic model against the Monte Carlo simulator at one
configured operating point.

Rows and tolerances:
  coverage          coverage_exact vs simulated max-SINR coverage,
                    max(3 SE, 0.005)
  hit_rate_f0_X     1 - f0^(1 - eta) vs simulated requests, 3 binomial SE
                    at the analytic rate, never below one request in M
  apc_f0_X          lambda_b P_tot at fixed density, same relative slack
                    as the hit rate it is driven by
  ee_f0_X           low-noise EE with the derived correction vs simulated,
                    max(3 SE, 2 %)
  window            change of simulated coverage when the window radius
                    doubles, against zero, max(3 SE, 0.002)

`mc_gamma_scale` scales the SINR threshold in the simulation only, which
makes the coverage and EE rows fail on purpose.
"""

import dataclasses
import logging
import math
from dataclasses import dataclass

from greencache.caching.popularity import hit_probability
from greencache.coverage.analytic import CoverageQuery, coverage_exact
from greencache.coverage.choices import CorrectionConvention
from greencache.experiments.sweeps import SweepResult, label
from greencache.metrics.apc import ApcQuery, apc_cached
from greencache.metrics.choices import DensityRule
from greencache.metrics.ee import EeQuery, ee_cached
from greencache.montecarlo.simulation import (
    SimConfig,
    estimate_apc_ee,
    estimate_coverage,
    estimate_truncation_effect,
)

logger = logging.getLogger(__name__)

COVERAGE_FLOOR = 0.005
EE_RELATIVE_FLOOR = 0.02
WINDOW_CHANGE_LIMIT = 0.002

VALIDATION_COLUMNS = (
    "quantity",
    "analytic",
    "simulated",
    "standard_error",
    "tolerance",
    "pass",
)


@dataclass(frozen=True)
class ValidationRow:
    quantity: str
    analytic: float
    simulated: float
    standard_error: float
    tolerance: float

    @property
    def passed(self):
        return abs(self.simulated - self.analytic) <= self.tolerance

    def as_row(self):
        return (
            self.quantity,
            self.analytic,
            self.simulated,
            self.standard_error,
            self.tolerance,
            self.passed,
        )


def _hit_tolerance(rate, requests):
    se = math.sqrt(rate * (1 - rate) / requests)
    return max(3 * se, 1 / requests)


def run_mc_validate(cfg, *, workers=None):
    network = cfg.network
    power = cfg.transmit_power
    sim = SimConfig(
        network=network,
        power=cfg.power.with_catalog(cfg.f0_values[0]),
        transmit_power=power,
        window_radius=cfg.window_radius,
        trials=cfg.trials,
        seed=cfg.seed,
        gamma_scale=cfg.mc_gamma_scale,
    )

    coverage = estimate_coverage(sim, workers=workers)
    rows = [
        ValidationRow(
            quantity="coverage",
            analytic=coverage_exact(CoverageQuery(network, power)),
            simulated=coverage.value,
            standard_error=coverage.standard_error,
            tolerance=max(3 * coverage.standard_error, COVERAGE_FLOOR),
        )
    ]

    for f0 in cfg.f0_values:
        params = cfg.power.with_catalog(f0)
        estimate = estimate_apc_ee(
            dataclasses.replace(sim, power=params), cfg.requests, coverage=coverage
        )
        rate = hit_probability(f0, network.eta)
        hit_tolerance = _hit_tolerance(rate, cfg.requests)
        rows.append(
            ValidationRow(
                quantity="hit_rate_f0_{}".format(label(f0)),
                analytic=rate,
                simulated=estimate.hit_rate.value,
                standard_error=estimate.hit_rate.standard_error,
                tolerance=hit_tolerance,
            )
        )

        apc_query = ApcQuery(
            power_params=params, network=network, density_rule=DensityRule.FIXED
        )
        rows.append(
            ValidationRow(
                quantity="apc_f0_{}".format(label(f0)),
                analytic=apc_cached(apc_query, power),
                simulated=estimate.apc.value,
                standard_error=estimate.apc.standard_error,
                tolerance=network.lambda_b * params.differential * hit_tolerance,
            )
        )

        ee_query = EeQuery(
            power_params=params, network=network, convention=CorrectionConvention.DERIVED
        )
        expected = ee_cached(ee_query, power)
        rows.append(
            ValidationRow(
                quantity="ee_f0_{}".format(label(f0)),
                analytic=expected,
                simulated=estimate.ee.value,
                standard_error=estimate.ee.standard_error,
                tolerance=max(
                    3 * estimate.ee.standard_error, EE_RELATIVE_FLOOR * abs(expected)
                ),
            )
        )

    window = estimate_truncation_effect(sim, workers=workers)
    rows.append(
        ValidationRow(
            quantity="window",
            analytic=0.0,
            simulated=window.value,
            standard_error=window.standard_error,
            tolerance=max(3 * window.standard_error, WINDOW_CHANGE_LIMIT),
        )
    )

    failed = tuple(row.quantity for row in rows if not row.passed)
    for quantity in failed:
        logger.warning("validation failed: %s", quantity)
    return SweepResult(
        columns=VALIDATION_COLUMNS,
        rows=[row.as_row() for row in rows],
        echo=cfg.echo,
        failed=failed,
    )
