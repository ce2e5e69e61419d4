"""
Derivative-free scalar search helpers shared by the optimizers, plus the
finite-difference checks used to confirm stationary points.
"""

import logging
import math
from dataclasses import dataclass

from greencache.base.exceptions import BracketFailure

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi

MAX_GOLDEN_ITERATIONS = 500


@dataclass(frozen=True)
class SearchResult:
    argmin: float
    minimum: float
    bracket: tuple
    iterations: int
    converged: bool


def expand_bracket(f, start, *, factor, cap, lower=None):
    """
    Find an interval that contains the minimum of a unimodal `f`.

    The upper end grows geometrically from `start` until `f` stops
    decreasing. When `lower` is given it is used as the lower end as-is
    (an analytic bound below which the minimum cannot lie); otherwise the
    lower end shrinks geometrically from `start` until `f` stops decreasing
    towards zero. Raises BracketFailure when either end passes `cap`
    (or `1 / cap` on the way down).
    """
    if lower is None:
        lo = start / factor
        while f(lo / factor) <= f(lo):
            lo /= factor
            if lo < 1 / cap:
                raise BracketFailure(
                    "objective still decreasing at P = {:.3g}".format(lo)
                )
        lo /= factor
    else:
        lo = lower

    hi = max(start, lo) * factor
    f_hi = f(hi)
    while True:
        candidate = hi * factor
        f_candidate = f(candidate)
        if f_candidate >= f_hi:
            break
        if candidate > cap:
            raise BracketFailure(
                "objective still decreasing at P = {:.3g}".format(candidate)
            )
        hi, f_hi = candidate, f_candidate

    logger.debug("bracket [%g, %g] from start %g", lo, candidate, start)
    return lo, candidate


def golden_section_search(f, a, b, *, rel_tol):
    """
    Golden-section search for the minimum of a unimodal `f` on [a, b].

    Stops once the bracket width is at most rel_tol * (1 + |x|) where x is
    the bracket midpoint. The returned argmin is that midpoint, so it always
    lies strictly inside the starting interval.
    """
    a, b = min(a, b), max(a, b)
    bracket = (a, b)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc = f(c)
    fd = f(d)

    iterations = 0
    while b - a > rel_tol * (1 + abs(0.5 * (a + b))):
        if iterations >= MAX_GOLDEN_ITERATIONS:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
        iterations += 1

    x = 0.5 * (a + b)
    fx = f(x)
    converged = b - a <= rel_tol * (1 + abs(x)) and math.isfinite(fx)
    return SearchResult(
        argmin=x,
        minimum=fx,
        bracket=bracket,
        iterations=iterations,
        converged=converged,
    )


def central_difference(f, x, h):
    return (f(x + h) - f(x - h)) / (2 * h)


def second_difference(f, x, h):
    return f(x + h) - 2 * f(x) + f(x - h)
