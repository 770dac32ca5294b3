"""
Stability of quasi-geodesics.

(K, delta)-quasi-geodesics between two points of a thick geodesic stay
within a bounded neighborhood of it, whatever the length of the segment.
Paths are proposed by the generators in the frame of L, validated, and
their largest distance to the segment is compared with the neighborhood
radius (2K + 2) R + delta, R = max(K b2, 2 b1), from measured constants.
"""

from typing import Any, Optional

import numpy as np

from teichproj.errors import QuasiGeodesicViolation
from teichproj.experiments.paths import validated_samples
from teichproj.experiments.runner import fan_out
from teichproj.generators import GENERATORS
from teichproj.interfaces.path_generator import MAX_ATTEMPTS, PathGenerator
from teichproj.logging_config import create_run_logger, get_logger
from teichproj.models.geodesic import TeichGeodesic
from teichproj.schemas.constants import EmpiricalConstants
from teichproj.schemas.report import CheckResult, ExperimentReport, FittedConstant
from teichproj.services.torus_model import distance_to_geodesic_array, vertical_geodesic

logger = get_logger(__name__)

EXPERIMENT_ID = "stability"

COLUMNS = ["segment_length", "path", "generator", "discarded", "path_length", "deviation", "bound"]


def neighborhood_bound(K: float, delta: float, constants: EmpiricalConstants) -> float:
    """(2K + 2) R + delta with R = max(K b2, 2 b1)."""
    R = max(K * constants.value("b2"), 2.0 * constants.value("b1"))
    return (2.0 * K + 2.0) * R + delta


def generate_path(
    generator: PathGenerator,
    L: TeichGeodesic,
    a: float,
    b: float,
    K: float,
    delta: float,
    rng: np.random.Generator,
    samples: int,
) -> tuple[np.ndarray, np.ndarray, float, int]:
    """
    Propose paths from L(a) to L(b) until one validates.

    Returns:
        Frame coordinates (x, y) of the samples, path length and the
        number of discarded proposals
    """
    discarded = 0
    for attempt in range(MAX_ATTEMPTS + 1):
        pieces = generator.pieces(L, a, b, rng, attempt)
        try:
            sampled = validated_samples(pieces, K, delta, samples)
        except QuasiGeodesicViolation:
            discarded += 1
            continue
        return sampled.z.real.copy(), sampled.z.imag.copy(), sampled.length, discarded
    raise QuasiGeodesicViolation(K, delta, worst_excess=float("nan"))


def stability_experiment(
    L: TeichGeodesic,
    K: float,
    delta: float,
    n_paths: int,
    constants: EmpiricalConstants,
    seed: int,
    segment_lengths: Optional[list[float]] = None,
    path_samples: int = 200,
    config: Optional[dict[str, Any]] = None,
    max_workers: Optional[int] = None,
) -> ExperimentReport:
    """
    Largest deviation from L of validated (K, delta)-quasi-geodesics
    between the ends of segments of L centred at L(0).

    Generators alternate between triangular detours and jittered hops.
    Discarded proposals are counted per path.
    """
    run_logger = create_run_logger(logger, experiment_id=EXPERIMENT_ID, seed=seed)
    lengths = segment_lengths or [L.length]
    bound = neighborhood_bound(K, delta, constants)
    generators = [factory() for factory in GENERATORS.values()]
    # the frame of L carries the vertical geodesic onto L, preserving parameters
    reference = vertical_geodesic()

    def path_task(index: int, rng: np.random.Generator) -> list[Any]:
        length = lengths[index // n_paths]
        generator = generators[index % len(generators)]
        a, b = -0.5 * length, 0.5 * length
        x, y, path_length, discarded = generate_path(generator, L, a, b, K, delta, rng, path_samples)
        deviation = float(distance_to_geodesic_array(reference.restrict(a, b), x, y).max())
        return [length, index % n_paths, generator.name, discarded, path_length, deviation, bound]

    rows = fan_out(path_task, len(lengths) * n_paths, seed, max_workers)
    discarded = sum(row[3] for row in rows)
    if discarded:
        run_logger.info("Discarded quasi-geodesic candidates", extra={"discarded": discarded})

    fitted, checks = [], []
    for length in lengths:
        deviations = [row[5] for row in rows if row[0] == length]
        worst = max(deviations)
        fitted.append(
            FittedConstant(name=f"B_measured[{length:g}]", value=worst, note=f"K={K:g}, delta={delta:g}")
        )
        checks.append(CheckResult.of(f"deviation <= neighborhood bound [{length:g}]", worst, bound))

    notes = []
    if len(lengths) >= 2:
        first, last = fitted[0].value, fitted[-1].value
        spread = abs(last - first) / max(first, last) if max(first, last) > 0 else 0.0
        fitted.append(
            FittedConstant(
                name="length_dependence",
                value=spread,
                note="relative difference of B_measured between the shortest and longest segment",
            )
        )
        notes.append(f"B_measured relative change across segment lengths: {spread:.3g}")

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
