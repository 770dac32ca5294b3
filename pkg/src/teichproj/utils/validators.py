"""
Validation utilities for command-line and configuration input.

These helpers turn raw user values into domain values, raising
ValidationError (exit code 2 at the CLI) instead of the DomainError the
models raise on bad data.
"""

import math
from collections.abc import Sequence

from teichproj.errors import ValidationError

EXPERIMENT_NAMES = ("contract", "stability", "thin", "pa-translation", "sharpness", "constants")


def validate_point_coords(field: str, x: float, y: float) -> tuple[float, float]:
    """
    Validate the coordinates of a point in the upper half-plane.

    Args:
        field: Name reported in the error
        x: Real part
        y: Imaginary part, must be positive

    Returns:
        The validated (x, y)

    Raises:
        ValidationError: If a coordinate is not finite or y <= 0
    """
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValidationError(field, "coordinates must be finite")
    if y <= 0:
        raise ValidationError(field, f"y must be positive, got {y}")
    return x, y


def validate_positive(field: str, value: float, allow_zero: bool = False) -> float:
    if not math.isfinite(value):
        raise ValidationError(field, "must be finite")
    if value < 0 or (value == 0 and not allow_zero):
        bound = "non-negative" if allow_zero else "positive"
        raise ValidationError(field, f"must be {bound}, got {value}")
    return value


def validate_matrix(field: str, entries: Sequence[int]) -> tuple[int, int, int, int]:
    """Validate four integer entries of an SL(2, Z) matrix, row-major."""
    if len(entries) != 4:
        raise ValidationError(field, f"need 4 entries, got {len(entries)}")
    a, b, c, d = (int(e) for e in entries)
    if a * d - b * c != 1:
        raise ValidationError(field, f"determinant must be 1, got {a * d - b * c}")
    return a, b, c, d


def validate_experiment_name(name: str) -> str:
    normalized = name.strip().lower()
    if normalized not in EXPERIMENT_NAMES:
        raise ValidationError(
            "experiment", f"unknown experiment '{name}'; valid names: {', '.join(EXPERIMENT_NAMES)}"
        )
    return normalized


def validate_depth(depth: int) -> int:
    if depth < 1:
        raise ValidationError("depth", f"must be at least 1, got {depth}")
    return depth
