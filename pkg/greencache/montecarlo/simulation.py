"""
Monte Carlo estimates of coverage, cache hit rate, APC and EE for a typical
user at the origin of a PPP network truncated to a disc.

Settings are read only in the calling process. Trial chunks handed to worker
processes carry a fully resolved SimConfig.
"""

import dataclasses
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from django.conf import settings

from greencache.base.exceptions import EmptyWindow, InvalidParameters
from greencache.caching.popularity import PopularityModel, sample_content_ranks
from greencache.caching.power import CachePowerParams
from greencache.montecarlo.streams import request_generator, trial_generator
from greencache.network.params import NetworkParams

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimConfig:
    network: NetworkParams
    power: CachePowerParams
    transmit_power: float
    window_radius: float | None = None
    trials: int = 10000
    seed: int = 0
    truncation_guard: float | None = None
    # Multiplies the SINR threshold in the simulation only (harness self-test).
    gamma_scale: float = 1.0

    def __post_init__(self):
        violations = []
        if not self.transmit_power > 0:
            violations.append("P > 0")
        if self.trials < 1:
            violations.append("trials >= 1")
        if self.seed < 0:
            violations.append("seed >= 0")
        if self.window_radius is not None and not self.window_radius > 0:
            violations.append("window_radius > 0")
        if not self.gamma_scale > 0:
            violations.append("gamma_scale > 0")
        if violations:
            raise InvalidParameters(violations)

    @property
    def threshold(self):
        return self.network.gamma * self.gamma_scale

    def resolved(self):
        """Copy with the window radius and truncation guard filled in."""
        guard = self.truncation_guard
        if guard is None:
            guard = settings.MONTECARLO_TRUNCATION_GUARD
        radius = self.window_radius
        if radius is None:
            radius = default_window_radius(self.network, guard)
        return dataclasses.replace(self, window_radius=radius, truncation_guard=guard)


@dataclass(frozen=True, eq=False)
class NetworkRealization:
    positions: np.ndarray
    fading: np.ndarray
    radius: float

    @property
    def count(self):
        return len(self.fading)

    @property
    def distances(self):
        return np.hypot(self.positions[:, 0], self.positions[:, 1])

    def restrict(self, radius):
        """The same snapshot seen through a smaller disc."""
        keep = self.distances <= radius
        return NetworkRealization(
            positions=self.positions[keep], fading=self.fading[keep], radius=radius
        )


@dataclass(frozen=True)
class SimEstimate:
    value: float
    standard_error: float
    trials: int

    def agrees_with(self, expected, *, sigmas=3.0, floor=0.0):
        return abs(self.value - expected) <= max(sigmas * self.standard_error, floor)


@dataclass(frozen=True)
class ApcEeEstimate:
    apc: SimEstimate
    ee: SimEstimate
    coverage: SimEstimate
    hit_rate: SimEstimate


def default_window_radius(params, guard=None, *, min_spacings=None, max_points=None):
    """
    max(min_spacings / sqrt(lambda_b), r_guard), where beyond r_guard the
    expected interference is a `guard` fraction of that between the mean
    nearest-BS distance 1 / (2 sqrt(lambda_b)) and r_guard. Capped so the
    expected BS count stays below `max_points`.
    """
    if guard is None:
        guard = settings.MONTECARLO_TRUNCATION_GUARD
    if min_spacings is None:
        min_spacings = settings.MONTECARLO_MIN_SPACINGS
    if max_points is None:
        max_points = settings.MONTECARLO_MAX_POINTS

    density = params.lambda_b
    nearest = 1 / (2 * math.sqrt(density))
    guard_radius = nearest * ((1 + guard) / guard) ** (1 / (params.alpha - 2))
    radius = max(min_spacings / math.sqrt(density), guard_radius)

    cap = math.sqrt(max_points / (math.pi * density))
    if radius > cap:
        logger.warning(
            "window radius %.4g capped at %.4g (%d expected BSs); "
            "truncation bias may exceed the guard",
            radius,
            cap,
            max_points,
        )
        radius = cap
    return radius


def sample_realization(cfg, trial_index):
    radius = cfg.window_radius
    if radius is None:
        radius = cfg.resolved().window_radius
    rng = trial_generator(cfg.seed, trial_index)

    count = rng.poisson(cfg.network.lambda_b * math.pi * radius**2)
    radii = radius * np.sqrt(rng.random(count))
    angles = 2 * math.pi * rng.random(count)
    fading = rng.exponential(1.0, count)
    positions = np.column_stack((radii * np.cos(angles), radii * np.sin(angles)))
    return NetworkRealization(positions=positions, fading=fading, radius=radius)


def max_sinr(real, cfg):
    """
    Best SINR over the BSs of `real`. The strongest received power gives the
    largest SINR, so only that BS is evaluated.
    """
    if real.count == 0:
        raise EmptyWindow("no base station within radius {:.4g}".format(real.radius))
    network = cfg.network
    received = (
        real.fading * network.b * real.distances ** (-network.alpha) * cfg.transmit_power
    )
    best = received.max()
    interference = received.sum() - best
    denominator = network.sigma_sq() + interference
    if denominator <= 0:
        return math.inf
    return best / denominator


def _covered(real, cfg):
    try:
        return max_sinr(real, cfg) >= cfg.threshold
    except EmptyWindow as e:
        logger.info("%s; counted as not covered", e)
        return False


def _coverage_chunk(cfg, start, stop):
    outcomes = np.zeros(stop - start, dtype=np.int8)
    for offset, trial in enumerate(range(start, stop)):
        outcomes[offset] = _covered(sample_realization(cfg, trial), cfg)
    return outcomes


def _truncation_chunk(cfg, start, stop, inner_radius):
    # cfg carries the enlarged window; inner_radius is the window under test.
    changes = np.zeros(stop - start, dtype=np.int8)
    for offset, trial in enumerate(range(start, stop)):
        real = sample_realization(cfg, trial)
        changes[offset] = int(_covered(real, cfg)) - int(
            _covered(real.restrict(inner_radius), cfg)
        )
    return changes


def _run_trials(chunk_fn, cfg, *args, workers=None, chunk_size=None):
    if workers is None:
        workers = settings.MONTECARLO_MAX_WORKERS
    if chunk_size is None:
        chunk_size = settings.MONTECARLO_CHUNK_SIZE

    bounds = [
        (start, min(start + chunk_size, cfg.trials))
        for start in range(0, cfg.trials, chunk_size)
    ]
    starts = [start for start, _ in bounds]
    stops = [stop for _, stop in bounds]
    extras = [[arg] * len(bounds) for arg in args]

    if workers > 1 and len(bounds) > 1:
        logger.debug("%d chunks on %d worker processes", len(bounds), workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            # map() yields in submission order, so trials stay in index order.
            chunks = list(pool.map(chunk_fn, [cfg] * len(bounds), starts, stops, *extras))
    else:
        chunks = []
        for start, stop in bounds:
            chunks.append(chunk_fn(cfg, start, stop, *args))
            logger.debug("trials %d-%d done", start, stop)
    return np.concatenate(chunks)


def _binomial(successes, trials):
    p = successes / trials
    return SimEstimate(
        value=p, standard_error=math.sqrt(p * (1 - p) / trials), trials=trials
    )


def estimate_coverage(cfg, *, workers=None, chunk_size=None):
    cfg = cfg.resolved()
    outcomes = _run_trials(_coverage_chunk, cfg, workers=workers, chunk_size=chunk_size)
    estimate = _binomial(int(outcomes.sum()), cfg.trials)
    logger.info(
        "coverage %.6f +/- %.2g over %d trials (R=%.4g)",
        estimate.value,
        estimate.standard_error,
        cfg.trials,
        cfg.window_radius,
    )
    return estimate


def estimate_truncation_effect(cfg, factor=2.0, *, workers=None, chunk_size=None):
    """
    Mean change of the coverage indicator when the window grows from R to
    factor * R, measured on nested windows of the same realizations.
    """
    cfg = cfg.resolved()
    inner = cfg.window_radius
    outer = dataclasses.replace(cfg, window_radius=factor * inner)
    changes = _run_trials(
        _truncation_chunk, outer, inner, workers=workers, chunk_size=chunk_size
    ).astype(float)
    return SimEstimate(
        value=float(changes.mean()),
        standard_error=float(changes.std() / math.sqrt(cfg.trials)),
        trials=cfg.trials,
    )


def estimate_hit_rate(cfg, requests):
    """Fraction of `requests` sampled content ranks that fall in the cache."""
    model = PopularityModel(eta=cfg.network.eta)
    ranks = sample_content_ranks(model, request_generator(cfg.seed), requests)
    return _binomial(int(np.count_nonzero(ranks < cfg.power.f0)), requests)


def estimate_apc_ee(cfg, requests, *, coverage=None, workers=None, chunk_size=None):
    """
    Per-request power is P + P_s + P_d on a miss and P + P_s on a hit, so the
    mean BS power follows from the simulated miss fraction. EE combines the
    coverage estimate with that mean power; standard errors use the delta
    method.
    """
    if coverage is None:
        coverage = estimate_coverage(cfg, workers=workers, chunk_size=chunk_size)
    hit_rate = estimate_hit_rate(cfg, requests)
    network = cfg.network
    differential = cfg.power.differential

    mean_power = cfg.power.total_power(1 - hit_rate.value, p_tx=cfg.transmit_power)
    power_se = differential * hit_rate.standard_error

    apc = SimEstimate(
        value=network.lambda_b * mean_power,
        standard_error=network.lambda_b * power_se,
        trials=requests,
    )

    scale = network.lambda_b * math.log1p(network.gamma)
    ee = SimEstimate(
        value=scale * coverage.value / mean_power,
        standard_error=scale
        * math.sqrt(
            (coverage.standard_error / mean_power) ** 2
            + (coverage.value * power_se / mean_power**2) ** 2
        ),
        trials=coverage.trials,
    )
    return ApcEeEstimate(apc=apc, ee=ee, coverage=coverage, hit_rate=hit_rate)
