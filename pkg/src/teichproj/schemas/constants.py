"""Measured stand-ins for the non-constructive constants of the projection theory."""

from typing import Any

from pydantic import BaseModel, Field

from teichproj.version import __constants_schema_version__, __version__

CONSTANT_NAMES = (
    "epsilon", "c0", "c1", "D", "c3", "c4", "c5", "r0", "ell0",
    "b0", "C", "b1", "b2", "B",
)


class MeasuredConstant(BaseModel):
    """One constant with the run that produced it."""

    value: float = Field(..., gt=0)
    experiment_id: str
    sample_size: int = Field(..., ge=1)


class EmpiricalConstants(BaseModel):
    """
    The full set of measured constants, persisted as versioned JSON.

    Every downstream check that cites a constant reads it from here.
    """

    schema_version: str = __constants_schema_version__
    artifact_version: str = __version__
    seed: int
    config: dict[str, Any]

    epsilon: MeasuredConstant
    c0: MeasuredConstant
    c1: MeasuredConstant
    D: MeasuredConstant
    c3: MeasuredConstant
    c4: MeasuredConstant
    c5: MeasuredConstant
    r0: MeasuredConstant
    ell0: MeasuredConstant
    b0: MeasuredConstant
    C: MeasuredConstant
    b1: MeasuredConstant
    b2: MeasuredConstant
    B: MeasuredConstant

    b1_exceeds_half_C: bool

    def value(self, name: str) -> float:
        constant: MeasuredConstant = getattr(self, name)
        return constant.value

    def values(self) -> dict[str, float]:
        return {name: self.value(name) for name in CONSTANT_NAMES}
