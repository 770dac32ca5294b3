"""
Handlers of the teichproj subcommands.

Each handler takes the parsed arguments, prints its results to stdout
and returns the process exit code. Errors propagate to `main`, which maps
them to exit codes.
"""

import argparse
import json
import math
from pathlib import Path
from typing import Any

from teichproj.config import get_settings
from teichproj.errors import ValidationError
from teichproj.experiments.constants import constants_report, measure_constants
from teichproj.experiments.contraction import contraction_experiment
from teichproj.experiments.sharpness import sharpness_demo
from teichproj.experiments.stability import stability_experiment
from teichproj.experiments.thin import thin_projection_experiment
from teichproj.experiments.translation import pa_translation_experiment
from teichproj.infra.store import ArtifactStore
from teichproj.logging_config import get_logger
from teichproj.models.foliation import MeasuredFoliation, SlopeCurve
from teichproj.models.geodesic import TeichGeodesic
from teichproj.models.point import MappingClass, TeichPoint
from teichproj.schemas.config import GeodesicKind, GeodesicSpec, RunConfig
from teichproj.schemas.report import ExperimentReport
from teichproj.services.foliation_calculus import slope_supremum
from teichproj.services.projection_engine import ProjectionEngine
from teichproj.services.torus_model import (
    axis_of,
    dilatation,
    geodesic_between,
    geodesic_from_qd,
    maximizing_class,
    teich_distance,
)
from teichproj.utils.validators import (
    validate_depth,
    validate_experiment_name,
    validate_matrix,
    validate_point_coords,
    validate_positive,
)
from teichproj.version import __version__

logger = get_logger(__name__)


# ----------------------------------------------------------------------------
# Configuration
# ----------------------------------------------------------------------------


def _read_config_file(path: str) -> dict[str, Any]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ValidationError("config", f"file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError("config", f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ValidationError("config", "top level must be a JSON object")
    return data


def load_run_config(args: argparse.Namespace, experiment: str = "constants") -> RunConfig:
    """
    Build the run configuration: flags override the JSON file, which
    overrides RunConfig defaults; seed and output directory fall back to
    the application settings.
    """
    settings = get_settings()
    data = _read_config_file(args.config) if args.config else {}
    data.setdefault("seed", settings.default_seed)
    data.setdefault("output_dir", settings.output_dir)
    data.setdefault("depth", settings.slope_oracle_depth)
    data.setdefault("max_workers", settings.max_workers)
    data["experiment"] = experiment

    if args.seed is not None:
        data["seed"] = args.seed
    if args.out is not None:
        data["output_dir"] = args.out
    if args.depth is not None:
        data["depth"] = validate_depth(args.depth)
    if args.tol is not None:
        tolerances = dict(data.get("tolerances") or {})
        tolerances["search"] = validate_positive("tol", args.tol)
        data["tolerances"] = tolerances
    if args.axis is not None:
        data["geodesic"] = {"kind": GeodesicKind.AXIS.value, "matrix": list(validate_matrix("axis", args.axis))}
    if getattr(args, "sigma", None) is not None:
        x, y = validate_point_coords("sigma", *args.sigma)
        data["sigma"] = {"x": x, "y": y}

    return RunConfig.model_validate(data)


def resolve_geodesic(spec: GeodesicSpec) -> TeichGeodesic:
    """The geodesic a spec describes, restricted to its interval when one is given."""
    if spec.kind is GeodesicKind.AXIS:
        assert spec.matrix is not None
        L, _ = axis_of(MappingClass(*validate_matrix("geodesic.matrix", spec.matrix)))
    elif spec.kind is GeodesicKind.ENDPOINTS:
        assert spec.start is not None and spec.end is not None
        L = geodesic_between(
            TeichPoint(x=spec.start.x, y=spec.start.y), TeichPoint(x=spec.end.x, y=spec.end.y)
        )
    else:
        assert spec.base is not None and spec.direction is not None
        L = geodesic_from_qd(
            TeichPoint(x=spec.base.x, y=spec.base.y),
            MeasuredFoliation(a=spec.direction.a, b=spec.direction.b),
            (-math.inf, math.inf),
        )
    if spec.interval is not None:
        L = L.restrict(*spec.interval)
    return L


def _engine(config: RunConfig) -> ProjectionEngine:
    return ProjectionEngine(
        search_tolerance=config.tolerances.search,
        sublevel_tolerance=config.tolerances.sublevel,
    )


# ----------------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------------


def cmd_distance(args: argparse.Namespace) -> int:
    """Print d(p, q), the dilatation K and the maximizing class."""
    p = TeichPoint(*validate_point_coords("p", args.x1, args.y1))
    q = TeichPoint(*validate_point_coords("q", args.x2, args.y2))

    d = teich_distance(p, q)
    witness = maximizing_class(p, q).to_foliation()
    print(f"d = {d:.6f}")
    print(f"K = {dilatation(p, q):.6f}")
    print(f"witness = ({witness.a:.6f}, {witness.b:.6f})")

    if args.depth is not None:
        ratio, slope = slope_supremum(p, q, validate_depth(args.depth))
        print(f"oracle d = {0.5 * math.log(ratio):.6f} at slope {slope.p}/{slope.q}")
    return 0


def cmd_project(args: argparse.Namespace) -> int:
    """Run both solvers for the configured point and geodesic and write projection.json."""
    config = load_run_config(args)
    if config.sigma is None:
        raise ValidationError("sigma", "required for project (use --sigma X Y or the config file)")
    sigma = TeichPoint(x=config.sigma.x, y=config.sigma.y)
    L = resolve_geodesic(config.geodesic_or_default())

    characterization = _engine(config).characterize_projection(sigma, L)
    store = ArtifactStore(Path(config.output_dir))
    path = store.write_json(
        "projection.json",
        {
            "artifact_version": __version__,
            "seed": config.seed,
            "config": config.snapshot(),
            "projection": characterization.to_dict(),
        },
    )

    result = characterization.result
    print(f"t_star = {result.t_star:.6f}")
    print(f"diam_mM = {characterization.diam_mM:.6g}")
    print(f"diam_Mm = {characterization.diam_Mm:.6g}")
    print(f"gap = {characterization.hausdorff_gap:.6g}")
    print(f"wrote {path}")
    return 0


def _run_experiment(config: RunConfig, store: ArtifactStore) -> ExperimentReport:
    experiment = config.experiment
    snapshot = config.snapshot()
    engine = _engine(config)
    samples = config.samples

    if experiment == "constants":
        L = resolve_geodesic(config.geodesic_or_default())
        constants = measure_constants(
            L,
            samples,
            config.seed,
            snapshot,
            window=config.window,
            engine=engine,
            certify_step=config.tolerances.certify_step,
            max_workers=config.max_workers,
        )
        store.save_constants(constants)
        return constants_report(constants)

    if experiment == "sharpness":
        slope = SlopeCurve.normalized(config.sharpness_slope.p, config.sharpness_slope.q)
        L = resolve_geodesic(config.geodesic) if config.geodesic is not None else None
        return sharpness_demo(
            slope,
            config.T_values,
            L=L,
            path_samples=samples.path_samples,
            seed=config.seed,
            bootstrap=samples.bootstrap,
            config=snapshot,
        )

    spec = config.geodesic_or_default()
    if experiment == "pa-translation":
        if spec.kind is not GeodesicKind.AXIS:
            raise ValidationError("geodesic", "pa-translation needs an axis geodesic (kind 'axis')")
        assert spec.matrix is not None
        return pa_translation_experiment(
            MappingClass(*validate_matrix("geodesic.matrix", spec.matrix)),
            config.pa_distances,
            samples.per_distance,
            config.seed,
            window=config.window,
            bootstrap=samples.bootstrap,
            config=snapshot,
            max_workers=config.max_workers,
        )

    constants = store.load_constants()
    L = resolve_geodesic(spec)
    if experiment == "contract":
        return contraction_experiment(
            L,
            config.distances,
            constants,
            samples.boundary,
            config.seed,
            config=snapshot,
            n_centers=samples.centers,
            n_paths=samples.paths,
            window=config.window,
            engine=engine,
            bootstrap=samples.bootstrap,
            max_workers=config.max_workers,
        )
    if experiment == "stability":
        return stability_experiment(
            L,
            config.K,
            config.delta,
            samples.paths,
            constants,
            config.seed,
            segment_lengths=config.segment_lengths,
            path_samples=samples.path_samples,
            config=snapshot,
            max_workers=config.max_workers,
        )
    alpha = SlopeCurve.normalized(config.alpha.p, config.alpha.q).as_foliation()
    return thin_projection_experiment(
        L,
        alpha,
        constants,
        samples.thin,
        config.seed,
        delta=config.thin_delta,
        window=config.window,
        engine=engine,
        config=snapshot,
    )


def cmd_run(args: argparse.Namespace) -> int:
    """Run one experiment and write its CSV, JSON and plot script."""
    experiment = validate_experiment_name(args.experiment)
    config = load_run_config(args, experiment)
    store = ArtifactStore(Path(config.output_dir))

    report = _run_experiment(config, store)
    paths = store.write_report(report)

    for fit in report.fitted:
        interval = f" [{fit.ci_low:.6g}, {fit.ci_high:.6g}]" if fit.ci_low is not None else ""
        print(f"{fit.name} = {fit.value:.6g}{interval}")
    failed = [check for check in report.checks if not check.passed]
    for check in failed:
        print(f"FAILED {check.name}: margin {check.margin:.6g}")
    for kind, path in sorted(paths.items()):
        print(f"wrote {kind}: {path}")
    if experiment == "constants":
        print(f"wrote constants: {store.constants_path}")
    if failed:
        logger.warning(
            "Experiment checks failed",
            extra={"experiment_id": report.experiment_id, "failed": [check.name for check in failed]},
        )
        return 1
    return 0
