"""
Contraction at a distance.

Balls that stay at least b1 away from a thick geodesic project to sets
of bounded diameter, however large the ball. The experiment measures the
projection diameter of spheres of radius d - b1 around points at distance
d and fits the trend in d; the path check tests the two consequences for
projections of path endpoints.
"""

import math
from typing import Any, Optional

import numpy as np

from teichproj.config import get_settings
from teichproj.experiments.constants import ball_diameter
from teichproj.experiments.paths import GeodesicPiece, make_path, path_coordinates
from teichproj.experiments.runner import fan_out
from teichproj.experiments.sampling import sample_at_distance
from teichproj.experiments.stats import fit_line
from teichproj.logging_config import create_run_logger, get_logger
from teichproj.models.geodesic import TeichGeodesic
from teichproj.models.path import QuasiGeodesicPath
from teichproj.models.point import TeichPoint
from teichproj.schemas.constants import EmpiricalConstants
from teichproj.schemas.report import CheckResult, ExperimentReport, FittedConstant
from teichproj.services.projection_engine import ProjectionEngine, projection_diameter
from teichproj.services.torus_model import distance_to_geodesic_array, teich_distance

logger = get_logger(__name__)

EXPERIMENT_ID = "contract"

COLUMNS = ["distance", "radius", "center", "diam", "status"]

BALL_STREAM, PATH_STREAM = range(2)


def path_contraction_check(
    L: TeichGeodesic,
    x: TeichPoint,
    y: TeichPoint,
    path: QuasiGeodesicPath,
    constants: EmpiricalConstants,
    engine: Optional[ProjectionEngine] = None,
) -> tuple[bool, list[CheckResult]]:
    """
    Check diam(pi(x) u pi(y)) against both bounds for a path from x to y.

    The first bound, b2 (T / (R - b1) + 1) for a path of length T staying
    outside the R-neighborhood of L, applies only when R > b1; the second,
    d(x, y) + B, always applies. When x = y the diameter is also checked
    against b0.
    """
    engine = engine or ProjectionEngine()
    b0, b1, b2, B = (constants.value(name) for name in ("b0", "b1", "b2", "B"))

    diameter = projection_diameter([engine.minmax_project(x, L), engine.minmax_project(y, L)])
    _, xs, ys = path_coordinates(path)
    R = float(distance_to_geodesic_array(L, xs, ys).min())
    T = path.length

    checks = []
    if R > b1:
        checks.append(
            CheckResult.of("path bound", diameter, b2 * (T / (R - b1) + 1.0), detail=f"R={R:.6g}")
        )
    else:
        checks.append(
            CheckResult.of(
                "path bound",
                diameter,
                math.inf,
                applicable=False,
                detail=f"R={R:.6g} <= b1={b1:.6g}",
            )
        )
    checks.append(CheckResult.of("quasi-Lipschitz bound", diameter, teich_distance(x, y) + B))
    if x == y:
        checks.append(CheckResult.of("single projection", diameter, b0))
    return all(check.passed for check in checks), checks


def contraction_experiment(
    L: TeichGeodesic,
    distances: list[float],
    constants: EmpiricalConstants,
    n_boundary_samples: int,
    seed: int,
    config: Optional[dict[str, Any]] = None,
    n_centers: int = 1,
    n_paths: int = 5,
    window: Optional[tuple[float, float]] = None,
    engine: Optional[ProjectionEngine] = None,
    bootstrap: Optional[int] = None,
    max_workers: Optional[int] = None,
) -> ExperimentReport:
    """
    Projection diameters of spheres of radius d - b1 around points at
    distance d from L, one row per (distance, center).

    Rows with d <= b1 are kept with a skip reason. b2 is fitted as the
    largest diameter of the run; the slope of diameter against distance
    is reported with its bootstrap interval.
    """
    engine = engine or ProjectionEngine()
    bootstrap = bootstrap or get_settings().bootstrap_resamples
    run_logger = create_run_logger(logger, experiment_id=EXPERIMENT_ID, seed=seed)
    b1 = constants.value("b1")

    def ball_task(index: int, rng: np.random.Generator) -> list[Any]:
        distance = distances[index // n_centers]
        center_index = index % n_centers
        if distance <= b1:
            return [distance, math.nan, center_index, math.nan, f"skipped: d <= b1 = {b1:.6g}"]
        center, _ = sample_at_distance(L, distance, rng, window)
        radius = distance - b1
        diameter = ball_diameter(L, center, radius, n_boundary_samples, rng, engine)
        return [distance, radius, center_index, diameter, "ok"]

    rows = fan_out(ball_task, len(distances) * n_centers, seed, max_workers, stream=BALL_STREAM)
    measured = [row for row in rows if row[4] == "ok"]
    skipped = len(rows) - len(measured)
    if skipped:
        run_logger.info("Distances skipped", extra={"skipped": skipped, "b1": b1})

    fitted: list[FittedConstant] = []
    notes: list[str] = []
    if measured:
        fitted.append(
            FittedConstant(name="b2", value=max(row[3] for row in measured), note="max over the run")
        )
    if len({row[0] for row in measured}) >= 2:
        fit = fit_line(
            [row[0] for row in measured],
            [row[3] for row in measured],
            np.random.default_rng([seed, BALL_STREAM, len(rows)]),
            resamples=bootstrap,
        )
        fitted.append(
            FittedConstant(
                name="diam_slope",
                value=fit.slope,
                ci_low=fit.slope_ci[0],
                ci_high=fit.slope_ci[1],
                note="diameter against distance",
            )
        )
        if fit.slope_ci_excludes_zero:
            notes.append("diameter trends with distance: slope interval excludes 0")
    else:
        notes.append("fewer than two measured distances; no trend fitted")

    def path_task(index: int, rng: np.random.Generator) -> list[CheckResult]:
        x, _ = sample_at_distance(L, float(rng.uniform(0.0, max(distances))), rng, window)
        y, _ = sample_at_distance(L, float(rng.uniform(0.0, max(distances))), rng, window)
        path = make_path([GeodesicPiece(x.as_complex(), y.as_complex())], K=1.0, delta=0.0)
        _, checks = path_contraction_check(L, x, y, path, constants, engine)
        return checks

    checks = [
        check
        for batch in fan_out(path_task, n_paths, seed, max_workers, stream=PATH_STREAM)
        for check in batch
    ]
    run_logger.info(
        "Contraction experiment complete",
        extra={"rows": len(rows), "checks": len(checks)},
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
