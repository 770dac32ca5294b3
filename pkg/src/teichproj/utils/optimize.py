"""
One-dimensional search routines used by the projection solvers.

Searches take an `increment(s, t)` callable returning F(t) - F(s) rather
than F itself, so comparisons stay accurate near a flat minimum where
F(t) and F(s) agree to many digits.
"""

import math
import sys
from collections.abc import Callable
from dataclasses import dataclass

from scipy.optimize import brentq

from teichproj.errors import ModelAssertionError

Increment = Callable[[float, float], float]

# 1/phi and 1/phi^2 for golden-section steps
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0

MAX_EXPANSIONS = 64
# e^{2t} overflows past t ~ 354
MAX_PARAMETER = 300.0
RTOL = 4 * sys.float_info.epsilon


@dataclass(frozen=True)
class Bracket:
    """A parameter range containing a minimizer; either end may be infinite."""

    lo: float
    hi: float

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)


def _expand(increment: Increment, start: float, limit: float, step: float) -> float:
    """Walk from start toward limit while the function keeps decreasing."""
    direction = 1.0 if limit > start else -1.0
    current = start
    for _ in range(MAX_EXPANSIONS):
        candidate = current + direction * step
        if (candidate - limit) * direction >= 0:
            return limit
        if abs(candidate) > MAX_PARAMETER:
            break
        if increment(current, candidate) >= 0:
            return candidate
        current = candidate
        step *= 2.0
    return direction * math.inf


def bracket_minimum(
    increment: Increment,
    a: float,
    b: float,
    start: float = 0.0,
    step: float = 1.0,
) -> Bracket:
    """
    Find a bracket [lo, hi] within [a, b] containing the minimizer of a
    quasi-convex function.

    Returns an infinite end when the function decreases without bound in
    that direction and [a, b] is unbounded there.
    """
    t0 = min(max(start, a), b)
    hi = t0 if t0 == b else _expand(increment, t0, b, step)
    lo = t0 if t0 == a else _expand(increment, t0, a, step)
    return Bracket(lo=lo, hi=hi)


def ternary_search(increment: Increment, lo: float, hi: float, tol: float) -> float:
    """Minimize a quasi-convex function on a finite bracket to width tol."""
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ModelAssertionError("ternary search needs a finite bracket", lo=lo, hi=hi)
    while hi - lo > tol:
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if not (lo < m1 < m2 < hi):
            break
        delta = increment(m1, m2)
        if delta > 0:
            hi = m2
        elif delta < 0:
            lo = m1
        else:
            lo, hi = m1, m2
    return 0.5 * (lo + hi)


def golden_section_max(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-10,
    max_iter: int = 200,
) -> tuple[float, float]:
    """
    Maximize a unimodal function on [lo, hi] by golden-section search.

    Returns (argmax, max).
    """
    a, b = lo, hi
    h = b - a
    c = a + INV_PHI_SQ * h
    d = a + INV_PHI * h
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if h <= tol:
            break
        if fc > fd:
            b, d, fd = d, c, fc
            h = INV_PHI * h
            c = a + INV_PHI_SQ * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = INV_PHI * h
            d = a + INV_PHI * h
            fd = f(d)
    if fc > fd:
        return c, fc
    return d, fd


def polish_stationary(
    f: Callable[[float], float],
    x0: float,
    radius: float = 1e-5,
    h: float = 1e-6,
) -> float:
    """
    Refine a stationary point of a smooth f by root-finding on its central
    difference derivative. Returns x0 unchanged when no sign change is found.
    """

    def derivative(x: float) -> float:
        return (f(x + h) - f(x - h)) / (2.0 * h)

    lo, hi = x0 - radius, x0 + radius
    d_lo, d_hi = derivative(lo), derivative(hi)
    if d_lo == 0.0:
        return lo
    if d_hi == 0.0:
        return hi
    if (d_lo > 0) == (d_hi > 0):
        return x0
    return float(brentq(derivative, lo, hi, xtol=1e-15, rtol=RTOL))


def solve_level(increment: Increment, origin: float, level: float, limit: float) -> float:
    """
    Find t between origin and limit with increment(origin, t) = level for a
    function increasing away from origin. Returns limit when the level is
    not reached there.
    """
    if level <= 0:
        return origin
    direction = 1.0 if limit >= origin else -1.0
    step = 1e-6
    inner = origin
    for _ in range(MAX_EXPANSIONS * 2):
        outer = origin + direction * step
        if (outer - limit) * direction >= 0:
            if increment(origin, limit) <= level:
                return limit
            outer = limit
            break
        if abs(outer) > MAX_PARAMETER:
            return direction * math.inf
        if increment(origin, outer) >= level:
            break
        inner = outer
        step *= 2.0
    else:
        return direction * math.inf
    return float(
        brentq(lambda t: increment(origin, t) - level, min(inner, outer), max(inner, outer), xtol=1e-15)
    )
