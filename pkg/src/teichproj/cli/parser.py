"""Argument parser for the teichproj command."""

import argparse

from teichproj.cli import commands
from teichproj.utils.validators import EXPERIMENT_NAMES
from teichproj.version import __version__


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="JSON run configuration")
    parser.add_argument("--seed", type=int, help="random seed (overrides the config)")
    parser.add_argument("--out", metavar="DIR", help="output directory (default $TEICHPROJ_OUTPUT_DIR)")
    parser.add_argument("--depth", type=int, help="slope oracle depth")
    parser.add_argument("--tol", type=float, help="search tolerance")
    parser.add_argument(
        "--axis",
        type=int,
        nargs=4,
        metavar=("A", "B", "C", "D"),
        help="use the axis of the matrix [[A, B], [C, D]] as the geodesic",
    )
    parser.add_argument("--log-level", help="logging level (default $TEICHPROJ_LOG_LEVEL)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="teichproj",
        description="Projections to Teichmüller geodesics in the torus model.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    distance = subparsers.add_parser("distance", help="Teichmüller distance between two points")
    distance.add_argument("x1", type=float)
    distance.add_argument("y1", type=float)
    distance.add_argument("x2", type=float)
    distance.add_argument("y2", type=float)
    _add_common_flags(distance)
    distance.set_defaults(handler=commands.cmd_distance)

    project = subparsers.add_parser("project", help="project a point to the configured geodesic")
    project.add_argument("--sigma", type=float, nargs=2, metavar=("X", "Y"), help="the point to project")
    _add_common_flags(project)
    project.set_defaults(handler=commands.cmd_project)

    run = subparsers.add_parser("run", help="run an experiment and write its report")
    run.add_argument("experiment", help=f"one of: {', '.join(EXPERIMENT_NAMES)}")
    _add_common_flags(run)
    run.set_defaults(handler=commands.cmd_run)

    return parser
