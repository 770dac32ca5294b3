"""
Cusp excursions and the failure of uniform contraction.

Along a geodesic whose endpoint class is a simple closed curve, segments
of any length T lie in ever thinner regions of that curve. Between the
ends of such a segment the demo builds two detours that run along
horocycles on either side, validates each as a (2, c)-quasi-geodesic
with the smallest c that works, and measures how far they stray from L
and from each other as T grows.
"""

import math
from typing import Any, Optional

import numpy as np

from teichproj.config import get_settings
from teichproj.errors import EndpointClassError
from teichproj.experiments.paths import required_additive_constant, sample_pieces, to_path, validated_samples
from teichproj.experiments.stats import fit_line
from teichproj.generators import HorocyclicDetour
from teichproj.logging_config import create_run_logger, get_logger
from teichproj.models.foliation import SlopeCurve
from teichproj.models.geodesic import Frame, TeichGeodesic
from teichproj.models.path import QuasiGeodesicPath
from teichproj.models.point import TeichPoint
from teichproj.schemas.report import CheckResult, ExperimentReport, FittedConstant
from teichproj.services.projection_engine import s_alpha
from teichproj.services.torus_model import (
    compose,
    distance_to_geodesic_array,
    extremal_length,
    geodesic_from_qd,
    mobius,
    teich_distance_array,
    vertical_geodesic,
)

logger = get_logger(__name__)

EXPERIMENT_ID = "sharpness"

COLUMNS = [
    "T", "delta_T", "c_plus", "c_minus",
    "deviation_plus", "deviation_minus", "mutual_deviation", "max_deviation",
]

K_DETOUR = 2.0
# z -> -1/z exchanges the two ends of the vertical geodesic
FLIP: Frame = (0.0, -1.0, 1.0, 0.0)


def cusp_frame(endpoint: SlopeCurve, L: Optional[TeichGeodesic] = None) -> Frame:
    """
    A frame carrying i e^{2t} onto L with the endpoint class reached as t -> +inf.

    Without L, the geodesic through i whose horizontal foliation is the
    endpoint class is used.

    Raises:
        EndpointClassError: If the slope is not an endpoint class of L
            reached along an infinite end of its interval
    """
    f = endpoint.as_foliation()
    if L is None:
        L = geodesic_from_qd(TeichPoint(x=0.0, y=1.0), f, (-math.inf, math.inf))
    s = s_alpha(L, f)
    if s == math.inf and L.interval[1] == math.inf:
        return L.frame
    if s == -math.inf and L.interval[0] == -math.inf:
        return compose(L.frame, FLIP)
    raise EndpointClassError(
        "sharpness_demo", "the slope must be an endpoint class reached by an infinite end of L"
    )


def hausdorff_distance(x1: np.ndarray, y1: np.ndarray, x2: np.ndarray, y2: np.ndarray) -> float:
    """Hausdorff distance between two sampled point sets."""
    d = teich_distance_array(x1[:, None], y1[:, None], x2[None, :], y2[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def detour_paths(
    T: float,
    frame: Frame,
    samples: int = 200,
) -> list[tuple[QuasiGeodesicPath, np.ndarray, np.ndarray]]:
    """
    The two horocyclic detours between the chart points i e^{2T} and i e^{4T}.

    Returns each validated path with its chart coordinates.
    """
    reference = vertical_geodesic()
    paths = []
    for side in (1.0, -1.0):
        pieces = HorocyclicDetour(side=side).pieces(reference, T, 2.0 * T, np.random.default_rng(0), 0)
        probe = sample_pieces(pieces, samples)
        c = required_additive_constant(probe.s, probe.z.real, probe.z.imag, K_DETOUR)
        sampled = validated_samples(pieces, K_DETOUR, c, samples)
        paths.append((to_path(sampled, K_DETOUR, c, frame), sampled.z.real.copy(), sampled.z.imag.copy()))
    return paths


def sharpness_demo(
    endpoint: SlopeCurve,
    T_values: list[float],
    L: Optional[TeichGeodesic] = None,
    path_samples: int = 200,
    seed: int = 0,
    bootstrap: Optional[int] = None,
    config: Optional[dict[str, Any]] = None,
) -> ExperimentReport:
    """
    Deviation of the two detours from L and from each other, per excursion depth T.

    The segment of L over [T, 2T] lies in Thin(endpoint, delta_T) with
    delta_T the endpoint's extremal length at its start.
    """
    frame = cusp_frame(endpoint, L)
    bootstrap = bootstrap or get_settings().bootstrap_resamples
    run_logger = create_run_logger(logger, experiment_id=EXPERIMENT_ID, seed=seed)
    reference = vertical_geodesic()
    f = endpoint.as_foliation()

    rows: list[list[Any]] = []
    for T in T_values:
        start = TeichPoint.from_complex(mobius(frame, reference.frame_point(T)))
        (plus, x1, y1), (minus, x2, y2) = detour_paths(T, frame, path_samples)
        deviations = [
            float(distance_to_geodesic_array(reference, x, y).max()) for x, y in ((x1, y1), (x2, y2))
        ]
        mutual = hausdorff_distance(x1, y1, x2, y2)
        rows.append(
            [T, extremal_length(start, f), plus.delta, minus.delta, *deviations, mutual, max(deviations)]
        )
        run_logger.debug("Excursion measured", extra={"T": T, "deviation": max(deviations)})

    ordered = sorted(rows, key=lambda row: row[0])
    increments = [b[7] - a[7] for a, b in zip(ordered, ordered[1:])]
    checks = []
    if increments:
        checks.append(CheckResult.of("max deviation increases with T", 0.0, min(increments)))

    fitted: list[FittedConstant] = []
    notes: list[str] = []
    if len({row[0] for row in rows}) >= 2:
        rng = np.random.default_rng([seed, len(rows)])
        linear = fit_line([row[0] for row in rows], [row[7] for row in rows], rng, resamples=bootstrap)
        fitted.append(
            FittedConstant(
                name="deviation_slope", value=linear.slope,
                ci_low=linear.slope_ci[0], ci_high=linear.slope_ci[1],
                note="max deviation against T",
            )
        )
        logarithmic = fit_line(
            [0.5 * math.asinh(row[0]) for row in rows], [row[7] for row in rows], rng, resamples=bootstrap
        )
        fitted.append(
            FittedConstant(
                name="deviation_vs_half_asinh_T", value=logarithmic.slope,
                ci_low=logarithmic.slope_ci[0], ci_high=logarithmic.slope_ci[1],
                note="max deviation against asinh(T) / 2",
            )
        )
        notes.append(
            "the lower horocyclic leg ends at distance asinh(T) / 2 from L, so deviation "
            "grows without bound but logarithmically in T"
        )

    run_logger.info("Sharpness demo complete", extra={"T_values": list(T_values)})
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

