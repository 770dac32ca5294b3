"""Run configuration schemas."""

import math
from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from teichproj.utils.validators import EXPERIMENT_NAMES

DEFAULT_AXIS = (2, 1, 1, 1)


class GeodesicKind(str, Enum):
    """How a run's geodesic is specified."""
    AXIS = "axis"
    ENDPOINTS = "endpoints"
    BASE_DIRECTION = "base_direction"


class PointSpec(BaseModel):
    """A point of the upper half-plane."""

    model_config = ConfigDict(extra="forbid")

    x: float
    y: float = Field(..., gt=0, description="Imaginary part, positive")


class FoliationSpec(BaseModel):
    """A measured foliation (a, b)."""

    model_config = ConfigDict(extra="forbid")

    a: float
    b: float

    @model_validator(mode="after")
    def _nonzero(self) -> "FoliationSpec":
        if self.a == 0 and self.b == 0:
            raise ValueError("foliation must be nonzero")
        return self


class SlopeSpec(BaseModel):
    """An integer slope p/q."""

    model_config = ConfigDict(extra="forbid")

    p: int
    q: int

    @model_validator(mode="after")
    def _primitive(self) -> "SlopeSpec":
        if math.gcd(self.p, self.q) != 1:
            raise ValueError("slope must be primitive and nonzero")
        return self


class GeodesicSpec(BaseModel):
    """
    One of: the axis of an SL(2, Z) matrix, the segment between two points,
    or a base point with a horizontal direction.
    """

    model_config = ConfigDict(extra="forbid")

    kind: GeodesicKind = GeodesicKind.AXIS
    matrix: Optional[list[int]] = Field(default=None, min_length=4, max_length=4)
    start: Optional[PointSpec] = None
    end: Optional[PointSpec] = None
    base: Optional[PointSpec] = None
    direction: Optional[FoliationSpec] = None
    interval: Optional[tuple[float, float]] = None

    @model_validator(mode="after")
    def _fields_for_kind(self) -> "GeodesicSpec":
        required = {
            GeodesicKind.AXIS: ("matrix",),
            GeodesicKind.ENDPOINTS: ("start", "end"),
            GeodesicKind.BASE_DIRECTION: ("base", "direction"),
        }[self.kind]
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ValueError(f"geodesic kind '{self.kind.value}' requires {', '.join(missing)}")
        if self.interval is not None and self.interval[0] > self.interval[1]:
            raise ValueError("interval must satisfy a <= b")
        return self


class Tolerances(BaseModel):
    """Solver tolerances."""

    model_config = ConfigDict(extra="forbid")

    search: float = Field(default=1e-10, gt=0)
    sublevel: float = Field(default=1e-8, gt=0)
    certify_step: float = Field(default=0.01, gt=0)


class SampleCounts(BaseModel):
    """Sample sizes for the experiments and constant scans."""

    model_config = ConfigDict(extra="forbid")

    sandwich: int = Field(default=10_000, ge=1)
    scan_pairs: int = Field(default=100_000, ge=10)
    sigma: int = Field(default=200, ge=2)
    boundary: int = Field(default=24, ge=1)
    centers: int = Field(default=4, ge=1)
    paths: int = Field(default=20, ge=1)
    path_samples: int = Field(default=200, ge=2)
    thin: int = Field(default=500, ge=1)
    per_distance: int = Field(default=20, ge=1)
    bootstrap: int = Field(default=1000, ge=10)


class RunConfig(BaseModel):
    """
    The complete, serializable description of one run.

    Embedded verbatim in every report written for the run.
    """

    model_config = ConfigDict(extra="forbid")

    experiment: str = "constants"
    # None selects the default for the experiment (the golden axis, or for
    # sharpness the geodesic whose endpoint is sharpness_slope)
    geodesic: Optional[GeodesicSpec] = None
    window: tuple[float, float] = (-3.0, 3.0)
    sigma: Optional[PointSpec] = None

    # contraction
    distances: list[float] = Field(default_factory=lambda: [2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0])
    # stability
    K: float = Field(default=2.0, ge=1.0)
    delta: float = Field(default=0.5, ge=0.0)
    segment_lengths: list[float] = Field(default_factory=lambda: [10.0, 20.0])
    # thin projections
    alpha: SlopeSpec = Field(default_factory=lambda: SlopeSpec(p=0, q=1))
    thin_delta: Optional[float] = Field(default=None, gt=0)
    # pseudo-Anosov translation
    pa_distances: list[float] = Field(
        default_factory=lambda: [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0]
    )
    # sharpness
    sharpness_slope: SlopeSpec = Field(default_factory=lambda: SlopeSpec(p=1, q=0))
    T_values: list[float] = Field(default_factory=lambda: [5.0, 10.0, 20.0])

    tolerances: Tolerances = Field(default_factory=Tolerances)
    samples: SampleCounts = Field(default_factory=SampleCounts)
    depth: int = Field(default=200, ge=1)
    seed: int = 0
    max_workers: int = Field(default=1, ge=1)
    output_dir: str = "out"

    @field_validator("experiment")
    @classmethod
    def _known_experiment(cls, value: str) -> str:
        if value not in EXPERIMENT_NAMES:
            raise ValueError(f"unknown experiment; valid names: {', '.join(EXPERIMENT_NAMES)}")
        return value

    @field_validator("window")
    @classmethod
    def _ordered_window(cls, value: tuple[float, float]) -> tuple[float, float]:
        if not value[0] < value[1]:
            raise ValueError("window must satisfy a < b")
        return value

    def snapshot(self) -> dict[str, Any]:
        """JSON-compatible dump embedded in reports (output_dir excluded)."""
        return self.model_dump(mode="json", exclude={"output_dir"})

    def geodesic_or_default(self) -> GeodesicSpec:
        return self.geodesic or GeodesicSpec(kind=GeodesicKind.AXIS, matrix=list(DEFAULT_AXIS))
