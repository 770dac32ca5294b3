"""
Translation distance of a pseudo-Anosov class.

A pseudo-Anosov class moves every point by at least c0 d(x, L) - c1,
L its axis, and by at most 2 d(x, L) + t0. The experiment samples points
at fixed distances from the axis and fits the lower envelope.
"""

import math
from typing import Any, Optional

import numpy as np

from teichproj.config import get_settings
from teichproj.experiments.runner import fan_out
from teichproj.experiments.sampling import sample_at_distance
from teichproj.experiments.stats import fit_line, lower_envelope
from teichproj.logging_config import create_run_logger, get_logger
from teichproj.models.point import MappingClass
from teichproj.schemas.report import CheckResult, ExperimentReport, FittedConstant
from teichproj.services.torus_model import apply_mapping_class, axis_of, teich_distance

logger = get_logger(__name__)

EXPERIMENT_ID = "pa-translation"

COLUMNS = ["distance", "sample", "x", "y", "displacement", "predicted", "power2", "power3"]

ON_AXIS_TOLERANCE = 1e-6
SLACK = 1e-9


def predicted_displacement(distance: float, t0: float) -> float:
    """d(x, m x) for x at the given distance from the axis: sinh d = cosh(2 distance) sinh t0."""
    return math.asinh(math.cosh(2.0 * distance) * math.sinh(t0))


def pa_translation_experiment(
    m: MappingClass,
    distances: list[float],
    n_per_distance: int,
    seed: int,
    window: Optional[tuple[float, float]] = None,
    bootstrap: Optional[int] = None,
    config: Optional[dict[str, Any]] = None,
    max_workers: Optional[int] = None,
) -> ExperimentReport:
    """
    Displacements d(x, m^n x), n = 1, 2, 3, of points at each distance from
    the axis of m.

    Raises NotPseudoAnosovError when |trace(m)| <= 2.
    """
    axis, t0 = axis_of(m)
    bootstrap = bootstrap or get_settings().bootstrap_resamples
    run_logger = create_run_logger(logger, experiment_id=EXPERIMENT_ID, seed=seed)
    powers = {n: m.power(n) for n in (1, 2, 3)}

    def task(index: int, rng: np.random.Generator) -> list[Any]:
        distance = distances[index // n_per_distance]
        x, _ = sample_at_distance(axis, distance, rng, window)
        moved = [teich_distance(x, apply_mapping_class(powers[n], x)) for n in (1, 2, 3)]
        return [
            distance,
            index % n_per_distance,
            x.x,
            x.y,
            moved[0],
            predicted_displacement(distance, t0),
            moved[1],
            moved[2],
        ]

    rows = fan_out(task, len(distances) * n_per_distance, seed, max_workers)
    displacement = [row[4] for row in rows]

    checks = [
        CheckResult.of("d(x, m x) >= t0", t0, min(displacement), slack=SLACK),
        CheckResult.of(
            "d(x, m x) <= 2 d(x, L) + t0",
            max(row[4] - 2.0 * row[0] for row in rows),
            t0,
            slack=SLACK,
        ),
        CheckResult.of(
            "d(x, m^n x) >= n t0",
            max(n * t0 - row[index] for row in rows for n, index in ((1, 4), (2, 6), (3, 7))),
            0.0,
            slack=SLACK,
        ),
    ]
    on_axis = [row[4] for row in rows if row[0] == 0.0]
    if on_axis:
        checks.append(
            CheckResult.of(
                "on-axis displacement = t0",
                max(abs(value - t0) for value in on_axis),
                ON_AXIS_TOLERANCE,
            )
        )

    fitted = [FittedConstant(name="t0", value=t0, note="log of the larger eigenvalue")]
    notes: list[str] = []
    keys, minima = lower_envelope([row[0] for row in rows], displacement)
    if keys.size >= 2:
        fit = fit_line(keys, minima, np.random.default_rng([seed, len(rows)]), resamples=bootstrap)
        fitted.append(
            FittedConstant(
                name="c0", value=fit.slope, ci_low=fit.slope_ci[0], ci_high=fit.slope_ci[1],
                note="slope of the lower envelope",
            )
        )
        fitted.append(
            FittedConstant(
                name="c1",
                value=-fit.intercept,
                ci_low=-fit.intercept_ci[1],
                ci_high=-fit.intercept_ci[0],
                note="minus the intercept of the lower envelope",
            )
        )
        if not fit.slope_ci_excludes_zero:
            notes.append("lower-envelope slope interval contains 0")
    else:
        notes.append("fewer than two distances; no envelope fitted")

    run_logger.info(
        "Translation distances measured",
        extra={"samples": len(rows), "t0": t0, "min_displacement": min(displacement)},
    )
    return ExperimentReport(
        experiment_id=EXPERIMENT_ID,
        seed=seed,
        config=config or {},
        columns=COLUMNS,
        rows=rows,
        fitted=fitted,
        checks=checks,
        notes=notes,
    )
