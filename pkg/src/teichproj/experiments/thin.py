"""
Projections of thin regions.

Thin(alpha, delta) is the horoball where alpha has extremal length at
most delta. For [alpha] distinct from both endpoint classes of L its
projection has diameter at most B + diam(L n Thin(alpha, delta)); below
a threshold delta0 the projections cluster within D of L(s_alpha).
"""

import math
from typing import Any, Optional

import numpy as np

from teichproj.errors import EndpointClassError
from teichproj.experiments.runner import task_rng
from teichproj.experiments.sampling import sample_thin
from teichproj.logging_config import create_run_logger, get_logger
from teichproj.models.foliation import MeasuredFoliation
from teichproj.models.geodesic import TeichGeodesic
from teichproj.models.path import ThinRegion
from teichproj.schemas.constants import EmpiricalConstants
from teichproj.schemas.report import CheckResult, ExperimentReport, FittedConstant
from teichproj.services.projection_engine import ProjectionEngine, e_at_vertex, s_alpha
from teichproj.services.torus_model import extremal_length

logger = get_logger(__name__)

EXPERIMENT_ID = "thin"

COLUMNS = ["delta", "sample", "x", "y", "extremal_length", "t_lo", "t_hi", "offset"]

# the second run uses this multiple of delta
GROWTH_FACTOR = 10.0


def minimal_length_on(L: TeichGeodesic, alpha: MeasuredFoliation) -> float:
    """E0 = min over t of E_{L(t)}(alpha), attained at s_alpha."""
    return 2.0 * e_at_vertex(L, alpha)


def thin_delta0(L: TeichGeodesic, alpha: MeasuredFoliation, constants: EmpiricalConstants) -> float:
    """Half the threshold E0 c1 r0 below which thin points project near L(s_alpha)."""
    return 0.5 * minimal_length_on(L, alpha) * constants.value("c1") * constants.value("r0")


def thin_intersection_diameter(L: TeichGeodesic, alpha: MeasuredFoliation, delta: float) -> float:
    """
    Length of {t : E_{L(t)}(alpha) <= delta}.

    Along L, E_t(alpha) = E0 cosh(2 (t - s_alpha)), so the set is empty
    below E0 and has length acosh(delta / E0) above it.
    """
    e0 = minimal_length_on(L, alpha)
    if delta < e0:
        return 0.0
    return math.acosh(delta / e0)


def thin_projection_experiment(
    L: TeichGeodesic,
    alpha: MeasuredFoliation,
    constants: EmpiricalConstants,
    n_samples: int,
    seed: int,
    delta: Optional[float] = None,
    window: Optional[tuple[float, float]] = None,
    engine: Optional[ProjectionEngine] = None,
    config: Optional[dict[str, Any]] = None,
) -> ExperimentReport:
    """
    Project sampled points of Thin(alpha, delta) and Thin(alpha, 10 delta).

    delta defaults to the measured threshold delta0. Raises
    EndpointClassError when alpha is an endpoint class of L.
    """
    s = s_alpha(L, alpha)
    if not math.isfinite(s):
        raise EndpointClassError(
            "thin_projection_experiment", "alpha is an endpoint class of L; both sides are infinite"
        )
    engine = engine or ProjectionEngine()
    run_logger = create_run_logger(logger, experiment_id=EXPERIMENT_ID, seed=seed)

    delta0 = thin_delta0(L, alpha, constants)
    delta = delta or delta0
    D, C, B = constants.value("D"), constants.value("C"), constants.value("B")
    c0, c1, r0 = constants.value("c0"), constants.value("c1"), constants.value("r0")

    rows: list[list[Any]] = []
    diameters: dict[float, float] = {}
    checks: list[CheckResult] = []
    for run, level in enumerate((delta, GROWTH_FACTOR * delta)):
        region = ThinRegion(alpha=alpha, delta=level)
        points = sample_thin(L, alpha, level, n_samples, task_rng(seed, run), window)
        lows, highs = [], []
        for index, point in enumerate(points):
            interval = engine.minmax_project(point, L).t_mM
            assert interval is not None
            lows.append(interval[0])
            highs.append(interval[1])
            offset = max(abs(interval[0] - s), abs(interval[1] - s))
            rows.append(
                [level, index, point.x, point.y, extremal_length(point, alpha), *interval, offset]
            )

        outside = sum(1 for point in points if not region.contains(point))
        checks.append(CheckResult.of(f"samples inside Thin [{level:.6g}]", float(outside), 0.0))

        projection_diam = max(highs) - min(lows)
        interior_diam = thin_intersection_diameter(L, alpha, level)
        diameters[level] = projection_diam
        checks.append(
            CheckResult.of(
                f"projection diameter <= B + diam(L n Thin) [{level:.6g}]",
                projection_diam,
                B + interior_diam,
            )
        )
        checks.append(
            CheckResult.of(
                f"diam(L n Thin) <= log(delta/delta0) + log(2 c0 c1 r0) [{level:.6g}]",
                interior_diam,
                math.log(level / delta0) + math.log(2.0 * c0 * c1 * r0),
                applicable=interior_diam > 0.0,
                detail=None if interior_diam > 0.0 else "L does not meet Thin(alpha, delta)",
            )
        )
        if level <= delta0:
            worst = max(max(abs(lo - s), abs(hi - s)) for lo, hi in zip(lows, highs))
            checks.append(CheckResult.of(f"projections within D of s_alpha [{level:.6g}]", worst, D))

    growth = diameters[GROWTH_FACTOR * delta] - diameters[delta]
    checks.append(
        CheckResult.of(
            "diameter growth under 10x delta <= C + log(10) / 2",
            growth,
            C + 0.5 * math.log(GROWTH_FACTOR),
        )
    )

    run_logger.info(
        "Thin projections measured",
        extra={"delta": delta, "delta0": delta0, "s_alpha": s, "growth": growth},
    )
    return ExperimentReport(
        experiment_id=EXPERIMENT_ID,
        seed=seed,
        config=config or {},
        columns=COLUMNS,
        rows=rows,
        fitted=[
            FittedConstant(name="delta0", value=delta0),
            FittedConstant(name="s_alpha", value=s),
            *(
                FittedConstant(
                    name=f"B_measured[{level:.6g}]",
                    value=diameters[level] - thin_intersection_diameter(L, alpha, level),
                )
                for level in (delta, GROWTH_FACTOR * delta)
            ),
        ],
        checks=checks,
    )
