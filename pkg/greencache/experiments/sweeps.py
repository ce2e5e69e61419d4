"""
Transmit-power sweeps and optimizer runs behind the APC and EE figures.
Every runner takes a resolved ExperimentConfig and returns a SweepResult,
which the output module renders.
"""

import dataclasses
import logging
import math
from dataclasses import dataclass

from greencache.base.exceptions import NoMinimum
from greencache.coverage.choices import CorrectionConvention
from greencache.experiments.choices import Objective
from greencache.metrics.apc import ApcQuery, apc_cached, apc_uncached
from greencache.metrics.choices import DensityRule, Mode
from greencache.metrics.ee import EeQuery, ee_cached, ee_uncached
from greencache.metrics.optimize import maximize_ee, minimize_apc, no_minimum_report

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepResult:
    columns: tuple
    rows: list
    echo: tuple = ()
    # Quantities that failed their check; only validation runs fill this in.
    failed: tuple = ()

    @property
    def passed(self):
        return not self.failed


def label(value):
    return format(value, "g")


def _apc_query(cfg, network, mode, f0=1.0):
    return ApcQuery(
        power_params=cfg.power.with_catalog(f0),
        network=network,
        mode=mode,
        density_rule=DensityRule(cfg.density_rule),
        density_constant=cfg.density_constant,
    )


def _ee_query(cfg, f0=1.0):
    return EeQuery(
        power_params=cfg.power.with_catalog(f0),
        network=cfg.network,
        convention=CorrectionConvention(cfg.convention),
        pcov_nn=cfg.pcov_nn,
    )


def run_apc_sweep(cfg):
    """
    APC over the power grid: one cached column per (alpha, f0) and one
    uncached column per alpha. Alpha only appears in column names when
    several are swept.
    """
    alphas = cfg.alphas or (cfg.network.alpha,)
    columns = ["P"]
    series = []
    for alpha in alphas:
        network = dataclasses.replace(cfg.network, alpha=alpha)
        suffix = "_alpha_{}".format(label(alpha)) if len(alphas) > 1 else ""
        for f0 in cfg.f0_values:
            columns.append("apc_cached{}_f0_{}".format(suffix, label(f0)))
            series.append((apc_cached, _apc_query(cfg, network, Mode.CACHED, f0)))
        columns.append("apc_uncached{}".format(suffix))
        series.append((apc_uncached, _apc_query(cfg, network, Mode.UNCACHED)))

    rows = [
        (power, *(metric(q, power) for metric, q in series)) for power in cfg.powers
    ]
    logger.info("APC sweep: %d rows x %d series", len(rows), len(series))
    return SweepResult(columns=tuple(columns), rows=rows, echo=cfg.echo)


def run_ee_sweep(cfg):
    """
    EE over the power grid, cached per f0 and uncached. `breakdown` flags
    rows with P <= c, where the low-noise approximation no longer holds.
    """
    scale = 1 / math.log(2) if cfg.bits else 1.0
    cached = [_ee_query(cfg, f0) for f0 in cfg.f0_values]
    uncached = _ee_query(cfg)
    correction = uncached.correction

    columns = ["P"]
    columns += ["ee_cached_f0_{}".format(label(f0)) for f0 in cfg.f0_values]
    columns += ["ee_uncached", "breakdown"]

    rows = []
    for power in cfg.powers:
        values = [scale * ee_cached(q, power) for q in cached]
        values.append(scale * ee_uncached(uncached, power))
        rows.append((power, *values, power <= correction))
    logger.info(
        "EE sweep: %d rows, c = %g (%s)", len(rows), correction, cfg.convention
    )
    return SweepResult(columns=tuple(columns), rows=rows, echo=cfg.echo)


OPTIMUM_COLUMNS = (
    "objective",
    "mode",
    "f0",
    "method",
    "argopt",
    "value",
    "closed_form",
    "bound",
    "numeric",
    "paper_closed_form",
    "agreement",
    "converged",
    "convention",
    "bracket_lo",
    "bracket_hi",
    "note",
)


def _optimum_row(report, f0):
    data = report.as_dict()
    bracket = data.pop("bracket") or (None, None)
    data.update(f0=f0, bracket_lo=bracket[0], bracket_hi=bracket[1])
    return tuple(data[column] for column in OPTIMUM_COLUMNS)


def _apc_optimum(q):
    try:
        return minimize_apc(q)
    except NoMinimum as e:
        logger.info("no APC minimum (%s): %s", q.mode, e)
        return no_minimum_report(q, str(e))


def run_optimize(cfg):
    """
    Closed-form, bound and numeric optima side by side: APC minima and EE
    maxima, cached per f0 and uncached. A missing APC minimum is a result,
    reported with method "none".
    """
    rows = []
    if cfg.objective in (Objective.APC, Objective.BOTH):
        for f0 in cfg.f0_values:
            q = _apc_query(cfg, cfg.network, Mode.CACHED, f0)
            rows.append(_optimum_row(_apc_optimum(q), f0))
        q = _apc_query(cfg, cfg.network, Mode.UNCACHED)
        rows.append(_optimum_row(_apc_optimum(q), None))
    if cfg.objective in (Objective.EE, Objective.BOTH):
        for f0 in cfg.f0_values:
            rows.append(_optimum_row(maximize_ee(_ee_query(cfg, f0), Mode.CACHED), f0))
        rows.append(_optimum_row(maximize_ee(_ee_query(cfg), Mode.UNCACHED), None))
    logger.info("optimize: %d results", len(rows))
    return SweepResult(columns=OPTIMUM_COLUMNS, rows=rows, echo=cfg.echo)
