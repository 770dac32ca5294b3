"""Linear fits with bootstrap confidence intervals, and binned envelopes."""

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy.stats import linregress


@dataclass(frozen=True)
class LinearFit:
    """Least-squares line with percentile-bootstrap confidence intervals."""

    slope: float
    intercept: float
    slope_ci: tuple[float, float]
    intercept_ci: tuple[float, float]
    n: int

    @property
    def slope_ci_contains_zero(self) -> bool:
        return self.slope_ci[0] <= 0.0 <= self.slope_ci[1]

    @property
    def slope_ci_excludes_zero(self) -> bool:
        return not self.slope_ci_contains_zero

    def to_dict(self) -> dict[str, Any]:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "slope_ci": list(self.slope_ci),
            "intercept_ci": list(self.intercept_ci),
            "n": self.n,
        }


def fit_line(
    x: Sequence[float],
    y: Sequence[float],
    rng: np.random.Generator,
    resamples: int = 1000,
    level: float = 0.95,
) -> LinearFit:
    """
    Fit y = slope * x + intercept and bootstrap 95% intervals by resampling
    (x, y) pairs. Degenerate resamples (a single distinct x) are skipped.
    """
    xs = np.asarray(x, dtype=float)
    ys = np.asarray(y, dtype=float)
    if xs.size < 2 or np.unique(xs).size < 2:
        raise ValueError("need at least two distinct x values to fit a line")
    point = linregress(xs, ys)

    slopes, intercepts = [], []
    for _ in range(resamples):
        idx = rng.integers(0, xs.size, xs.size)
        if np.unique(xs[idx]).size < 2:
            continue
        fit = linregress(xs[idx], ys[idx])
        slopes.append(fit.slope)
        intercepts.append(fit.intercept)

    tail = 100.0 * (1.0 - level) / 2.0
    slope_ci = tuple(float(v) for v in np.percentile(slopes, [tail, 100.0 - tail]))
    intercept_ci = tuple(float(v) for v in np.percentile(intercepts, [tail, 100.0 - tail]))
    return LinearFit(
        slope=float(point.slope),
        intercept=float(point.intercept),
        slope_ci=(slope_ci[0], slope_ci[1]),
        intercept_ci=(intercept_ci[0], intercept_ci[1]),
        n=int(xs.size),
    )


def lower_envelope(x: Sequence[float], y: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
    """Per distinct x, the minimum y."""
    xs = np.asarray(x, dtype=float)
    ys = np.asarray(y, dtype=float)
    keys = np.unique(xs)
    return keys, np.array([ys[xs == k].min() for k in keys])
