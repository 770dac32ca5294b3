"""Experiment report schemas."""

import math
from typing import Any, Optional

from pydantic import BaseModel, Field

from teichproj.version import __version__


class FittedConstant(BaseModel):
    """A fitted or measured quantity, with a confidence interval when one exists."""

    name: str
    value: float
    ci_low: Optional[float] = None
    ci_high: Optional[float] = None
    note: Optional[str] = None

    @property
    def ci_excludes_zero(self) -> bool:
        if self.ci_low is None or self.ci_high is None:
            return False
        return self.ci_low > 0 or self.ci_high < 0


class CheckResult(BaseModel):
    """
    One inequality lhs <= rhs, with its margin rhs - lhs.

    Inapplicable checks are kept in the report but never fail it.
    """

    name: str
    lhs: float
    rhs: float
    margin: float
    passed: bool
    applicable: bool = True
    detail: Optional[str] = None

    @classmethod
    def of(
        cls,
        name: str,
        lhs: float,
        rhs: float,
        slack: float = 0.0,
        applicable: bool = True,
        detail: Optional[str] = None,
    ) -> "CheckResult":
        margin = rhs - lhs
        passed = (not applicable) or (not math.isnan(margin) and margin >= -slack)
        return cls(
            name=name,
            lhs=lhs,
            rhs=rhs,
            margin=margin,
            passed=passed,
            applicable=applicable,
            detail=detail,
        )


class ExperimentReport(BaseModel):
    """
    Rows, fitted constants and checks of one experiment run.

    Identical seed and config produce identical rows.
    """

    experiment_id: str
    artifact_version: str = __version__
    seed: int
    config: dict[str, Any]
    columns: list[str]
    rows: list[list[Any]] = Field(default_factory=list)
    fitted: list[FittedConstant] = Field(default_factory=list)
    checks: list[CheckResult] = Field(default_factory=list)
    notes: list[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def fitted_value(self, name: str) -> float:
        for fit in self.fitted:
            if fit.name == name:
                return fit.value
        raise KeyError(name)

    def column(self, name: str) -> list[Any]:
        index = self.columns.index(name)
        return [row[index] for row in self.rows]
