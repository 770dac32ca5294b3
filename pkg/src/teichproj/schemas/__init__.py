"""Pydantic schemas for configuration, constants and reports."""

from teichproj.schemas.config import (
    FoliationSpec,
    GeodesicKind,
    GeodesicSpec,
    PointSpec,
    RunConfig,
    SampleCounts,
    SlopeSpec,
    Tolerances,
)
from teichproj.schemas.constants import CONSTANT_NAMES, EmpiricalConstants, MeasuredConstant
from teichproj.schemas.report import CheckResult, ExperimentReport, FittedConstant

__all__ = [
    "CONSTANT_NAMES",
    "CheckResult",
    "EmpiricalConstants",
    "ExperimentReport",
    "FittedConstant",
    "FoliationSpec",
    "GeodesicKind",
    "GeodesicSpec",
    "MeasuredConstant",
    "PointSpec",
    "RunConfig",
    "SampleCounts",
    "SlopeSpec",
    "Tolerances",
]
