"""
Transmit-power optimizers for APC and EE.

Each optimizer reports the analytic result (closed form or lower bound) next
to an independent golden-section search of the objective itself, so the two
can be compared. The search never uses the analytic derivatives.
"""

import logging
import math
import sys
from dataclasses import asdict, dataclass

from django.conf import settings

from greencache.base.exceptions import NoMinimum
from greencache.base.numerics import expand_bracket, golden_section_search
from greencache.metrics.apc import apc
from greencache.metrics.choices import DensityRule, Mode, OptimumMethod
from greencache.metrics.ee import ee

logger = logging.getLogger(__name__)

# How many search resolutions a cached APC minimum may fall short of its bound.
BOUND_SLACK = 4


@dataclass(frozen=True)
class OptimumReport:
    objective: str
    mode: str
    method: str
    argopt: float | None
    value: float | None
    closed_form: float | None = None
    bound: float | None = None
    numeric: float | None = None
    paper_closed_form: float | None = None
    bracket: tuple | None = None
    converged: bool = False
    convention: str | None = None
    note: str = ""

    @property
    def agreement(self):
        """Relative gap between the closed form and the numeric optimum."""
        if self.closed_form is None or self.numeric is None:
            return None
        return abs(self.numeric - self.closed_form) / abs(self.closed_form)

    def as_dict(self):
        data = asdict(self)
        data["agreement"] = self.agreement
        return data


def no_minimum_report(q, reason):
    return OptimumReport(
        objective="apc",
        mode=str(q.mode),
        method=OptimumMethod.NONE,
        argopt=None,
        value=None,
        note=reason,
    )


def _search_settings(rel_tol, factor, cap):
    return (
        settings.OPTIMIZER_RELATIVE_TOLERANCE if rel_tol is None else rel_tol,
        settings.OPTIMIZER_BRACKET_FACTOR if factor is None else factor,
        settings.OPTIMIZER_BRACKET_CAP if cap is None else cap,
    )


def minimize_apc(q, *, rel_tol=None, factor=None, cap=None):
    """
    Minimize APC over P.

    Without caching the minimizer is 2 (P_s + P_d) / epsilon; with caching it
    is searched numerically above the lower bound 2 P_s / epsilon. Raises
    NoMinimum when epsilon <= 0 (APC decreases without bound in P) or when the
    density is fixed (APC then increases in P).
    """
    rel_tol, factor, cap = _search_settings(rel_tol, factor, cap)

    if q.density_rule == DensityRule.FIXED:
        raise NoMinimum("APC increases with P at a fixed BS density")
    epsilon = q.epsilon
    if epsilon <= 0:
        raise NoMinimum(
            "APC decreases monotonically in P for alpha <= 4 (alpha = {})".format(
                q.network.alpha
            )
        )

    power = q.power_params

    def objective(p):
        return apc(q, p)

    if q.mode == Mode.UNCACHED:
        closed_form = 2 * (power.static + power.differential) / epsilon
        lo, hi = expand_bracket(objective, closed_form, factor=factor, cap=cap)
        search = golden_section_search(objective, lo, hi, rel_tol=rel_tol)
        logger.debug("uncached APC minimum %g, numeric %g", closed_form, search.argmin)
        return OptimumReport(
            objective="apc",
            mode=str(q.mode),
            method=OptimumMethod.CLOSED_FORM,
            argopt=closed_form,
            value=objective(closed_form),
            closed_form=closed_form,
            numeric=search.argmin,
            bracket=(lo, hi),
            converged=search.converged,
        )

    bound = 2 * power.static / epsilon
    lo, hi = expand_bracket(objective, bound, factor=factor, cap=cap)
    search = golden_section_search(objective, lo, hi, rel_tol=rel_tol)
    # Where the miss term is negligible the minimum sits on the bound, so only
    # a shortfall beyond the search resolution counts.
    slack = BOUND_SLACK * max(rel_tol, math.sqrt(sys.float_info.epsilon)) * (1 + bound)
    note = ""
    if search.argmin < bound - slack:
        note = "numeric minimum {} not above bound {}".format(search.argmin, bound)
        logger.warning("cached APC: %s", note)
    logger.debug("cached APC bound %g, numeric %g", bound, search.argmin)
    return OptimumReport(
        objective="apc",
        mode=str(q.mode),
        method=OptimumMethod.NUMERIC,
        argopt=search.argmin,
        value=search.minimum,
        bound=bound,
        numeric=search.argmin,
        bracket=(lo, hi),
        converged=search.converged,
        note=note,
    )


def maximize_ee(q, mode, *, rel_tol=None, factor=None, cap=None):
    """
    Maximize EE over P > c.

    The stationary condition P^2 - 2 c P - c K = 0 gives
    P* = c + sqrt(c^2 + c K); with c = 1 this is 1 + sqrt(1 + K), which is
    also reported for comparison. A numeric search over (c, inf) confirms the
    configured c. With c = 0 EE decreases in P and the report carries the
    P -> 0+ limit instead.
    """
    rel_tol, factor, cap = _search_settings(rel_tol, factor, cap)

    c = q.correction
    load = q.load(mode)
    paper_closed_form = 1 + math.sqrt(1 + load)

    if c <= 0:
        return OptimumReport(
            objective="ee",
            mode=str(mode),
            method=OptimumMethod.BOUND,
            argopt=0.0,
            value=q.spectral_scale / load,
            bound=0.0,
            paper_closed_form=paper_closed_form,
            convention=str(q.convention),
            note="no noise correction: EE decreases in P, supremum as P -> 0+",
        )

    closed_form = c + math.sqrt(c * c + c * load)

    def objective(p):
        return -ee(q, p, mode)

    lo, hi = expand_bracket(objective, c, factor=factor, cap=cap, lower=c)
    search = golden_section_search(objective, lo, hi, rel_tol=rel_tol)
    logger.debug("EE maximum %g (c=%g), numeric %g", closed_form, c, search.argmin)
    return OptimumReport(
        objective="ee",
        mode=str(mode),
        method=OptimumMethod.CLOSED_FORM,
        argopt=closed_form,
        value=ee(q, closed_form, mode),
        closed_form=closed_form,
        numeric=search.argmin,
        paper_closed_form=paper_closed_form,
        bracket=(lo, hi),
        converged=search.converged,
        convention=str(q.convention),
    )
