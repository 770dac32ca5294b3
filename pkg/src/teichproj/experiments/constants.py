"""
Measurement of the empirical constants.

The projection theory proves that constants exist (c0, D, c1, b1, b2, ...)
without computing them. Here each is estimated on a certified segment by
the scan or sample maximum it bounds, and persisted so that every later
check cites the same numbers.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from teichproj.errors import InapplicableCaseError
from teichproj.experiments.runner import fan_out, task_rng
from teichproj.experiments.sampling import sample_at_distance, sample_sphere, sampling_window
from teichproj.logging_config import create_run_logger, get_logger
from teichproj.models.geodesic import TeichGeodesic
from teichproj.models.point import TeichPoint
from teichproj.models.projection import ProjectionCharacterization
from teichproj.schemas.config import SampleCounts
from teichproj.schemas.constants import CONSTANT_NAMES, EmpiricalConstants, MeasuredConstant
from teichproj.schemas.report import CheckResult, ExperimentReport
from teichproj.services.foliation_calculus import certify_precompact
from teichproj.services.projection_engine import (
    ProjectionEngine,
    projection_diameter,
    sandwich_constant,
    scan_distance_implies_intersection,
)
from teichproj.services.torus_model import teich_distance

logger = get_logger(__name__)

EXPERIMENT_ID = "constants"

# Margin added to C / 2 to obtain b1
B1_MARGIN = 0.5
# sigma is drawn at distance U(0, MAX_SIGMA_DISTANCE) from L
MAX_SIGMA_DISTANCE = 5.0
# ball centers for b2 sit at distance b1 + U(0.5, 3)
CENTER_OFFSETS = (0.5, 3.0)

# random streams of the stages
SANDWICH_STREAM, SCAN_STREAM, SIGMA_STREAM, BALL_STREAM = range(4)


@dataclass(frozen=True)
class SigmaSample:
    """One sampled point with its projection data."""

    sigma: TeichPoint
    distance: float
    characterization: ProjectionCharacterization
    ratio_quality: Optional[float]

    @property
    def t_mM(self) -> tuple[float, float]:
        interval = self.characterization.result.t_mM
        assert interval is not None
        return interval


def sample_sigmas(
    L: TeichGeodesic,
    count: int,
    seed: int,
    engine: ProjectionEngine,
    max_distance: float = MAX_SIGMA_DISTANCE,
    max_workers: Optional[int] = None,
) -> list[SigmaSample]:
    """Points at distance U(0, max_distance) from L, characterized by both solvers."""

    def task(index: int, rng: np.random.Generator) -> SigmaSample:
        sigma, _ = sample_at_distance(L, float(rng.uniform(0.0, max_distance)), rng, L.interval)
        characterization = engine.characterize_projection(sigma, L)
        try:
            quality, _ = engine.check_ratio_estimates_distance(sigma, L)
        except InapplicableCaseError:
            quality = None
        distance = characterization.result.distance_to_L
        assert distance is not None
        return SigmaSample(sigma, distance, characterization, quality)

    return fan_out(task, count, seed, max_workers, stream=SIGMA_STREAM)


def contraction_additive_constant(samples: list[SigmaSample], D: float) -> float:
    """
    Largest d(x, L) + d(y, L) - d(x, y) over sample pairs whose Maxmin
    witnesses have vertices more than D apart.
    """
    worst = -math.inf
    for first, second in itertools.combinations(samples, 2):
        s, t = first.characterization.s_lambda, second.characterization.s_lambda
        if not (math.isfinite(s) and math.isfinite(t)) or abs(s - t) <= D:
            continue
        excess = first.distance + second.distance - teich_distance(first.sigma, second.sigma)
        worst = max(worst, excess)
    return worst


def quasi_lipschitz_constant(samples: list[SigmaSample]) -> float:
    """Largest diam(pi(x) u pi(y)) - d(x, y) over sample pairs, x = y included."""
    worst = -math.inf
    for first, second in itertools.combinations_with_replacement(samples, 2):
        (lo1, hi1), (lo2, hi2) = first.t_mM, second.t_mM
        diameter = max(hi1, hi2) - min(lo1, lo2)
        worst = max(worst, diameter - teich_distance(first.sigma, second.sigma))
    return worst


def ball_diameter(
    L: TeichGeodesic,
    center: TeichPoint,
    radius: float,
    count: int,
    rng: np.random.Generator,
    engine: ProjectionEngine,
) -> float:
    """Diameter of the union of t_mM over the center and `count` points of its sphere."""
    points = [center] + sample_sphere(center, radius, count, rng)
    return projection_diameter([engine.minmax_project(point, L) for point in points])


def measure_constants(
    L: TeichGeodesic,
    samples: SampleCounts,
    seed: int,
    config: dict[str, Any],
    window: Optional[tuple[float, float]] = None,
    engine: Optional[ProjectionEngine] = None,
    certify_step: Optional[float] = None,
    max_workers: Optional[int] = None,
) -> EmpiricalConstants:
    """
    Measure every constant on the segment of L over the sampling window.

    Values are floored at the sublevel tolerance so that each stored
    constant is positive.
    """
    engine = engine or ProjectionEngine()
    run_logger = create_run_logger(logger, experiment_id=EXPERIMENT_ID, seed=seed)
    segment = L.restrict(*sampling_window(L, window))

    certificate = certify_precompact(segment, certify_step)
    c0 = sandwich_constant(segment, certificate, samples.sandwich, task_rng(seed, 0, SANDWICH_STREAM))
    scan = scan_distance_implies_intersection(
        segment, certificate, samples.scan_pairs, task_rng(seed, 0, SCAN_STREAM)
    )

    sigmas = sample_sigmas(segment, samples.sigma, seed, engine, max_workers=max_workers)
    qualities = [s.ratio_quality for s in sigmas if s.ratio_quality is not None]
    c3 = max(qualities) if qualities else 1.0
    c4 = max(
        max(s.characterization.result.t_tilde_Mm) - min(s.characterization.result.t_tilde_Mm)
        for s in sigmas
    )
    c5 = max(
        (
            max(abs(t - s.characterization.s_lambda) for t in s.t_mM)
            for s in sigmas
            if math.isfinite(s.characterization.s_lambda)
        ),
        default=0.0,
    )
    r0 = min(s.characterization.result.max_ratio or math.inf for s in sigmas)
    ell0 = max(value for _, _, value in certificate.samples)
    b0 = max(s.characterization.diam_mM for s in sigmas)

    C = contraction_additive_constant(sigmas, scan.D)
    if not math.isfinite(C):
        run_logger.warning("No sample pair separated by more than D", extra={"D": scan.D})
        C = 0.0
    b1 = max(C, 0.0) / 2.0 + B1_MARGIN

    def ball_task(index: int, rng: np.random.Generator) -> float:
        distance = b1 + float(rng.uniform(*CENTER_OFFSETS))
        center, _ = sample_at_distance(segment, distance, rng, segment.interval)
        return ball_diameter(segment, center, distance - b1, samples.boundary, rng, engine)

    b2 = max(fan_out(ball_task, samples.centers, seed, max_workers, stream=BALL_STREAM))
    B = quasi_lipschitz_constant(sigmas)

    floor = engine.sublevel_tolerance
    sizes = {
        "epsilon": len(certificate.samples),
        "c0": samples.sandwich,
        "c1": samples.scan_pairs,
        "D": samples.scan_pairs,
        "c3": max(1, len(qualities)),
        "ell0": len(certificate.samples),
        "b2": samples.centers * (samples.boundary + 1),
    }
    measured = {
        "epsilon": certificate.epsilon,
        "c0": c0,
        "c1": scan.c1,
        "D": scan.D,
        "c3": c3,
        "c4": c4,
        "c5": c5,
        "r0": r0,
        "ell0": ell0,
        "b0": b0,
        "C": C,
        "b1": b1,
        "b2": b2,
        "B": B,
    }
    fields = {
        name: MeasuredConstant(
            value=max(measured[name], floor),
            experiment_id=EXPERIMENT_ID,
            sample_size=sizes.get(name, samples.sigma),
        )
        for name in CONSTANT_NAMES
    }

    run_logger.info("Constants measured", extra={name: c.value for name, c in fields.items()})
    return EmpiricalConstants(
        seed=seed,
        config=config,
        b1_exceeds_half_C=fields["b1"].value > fields["C"].value / 2.0,
        **fields,
    )


def constants_report(constants: EmpiricalConstants) -> ExperimentReport:
    """Tabulate measured constants as an experiment report."""
    values = constants.values()
    return ExperimentReport(
        experiment_id=EXPERIMENT_ID,
        seed=constants.seed,
        config=constants.config,
        columns=["name", "value", "sample_size"],
        rows=[
            [name, values[name], getattr(constants, name).sample_size] for name in CONSTANT_NAMES
        ],
        checks=[
            CheckResult.of("b1 > C / 2", values["C"] / 2.0, values["b1"]),
            CheckResult.of("c0 >= 1", 1.0, values["c0"], slack=1e-12),
            CheckResult.of("c3 >= 1", 1.0, values["c3"], slack=1e-10),
            CheckResult.of(
                "|t - s_lambda| <= log(2 c0 c3) / 2",
                values["c5"],
                0.5 * math.log(2.0 * values["c0"] * values["c3"]),
            ),
        ],
    )
