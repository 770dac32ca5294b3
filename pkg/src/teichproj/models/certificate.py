"""Sampled thickness certificates for geodesic segments."""

from dataclasses import dataclass
from typing import Any

from teichproj.errors import ModelAssertionError
from teichproj.models.foliation import SlopeCurve


@dataclass(frozen=True)
class ThicknessCertificate:
    """
    Sampled evidence that a geodesic segment is epsilon-precompact.

    This is a lower-bound estimate from samples, not a proof.
    """

    epsilon: float
    samples: tuple[tuple[float, SlopeCurve, float], ...]
    interval: tuple[float, float]

    def __post_init__(self) -> None:
        for t, _, value in self.samples:
            if value < self.epsilon:
                raise ModelAssertionError(
                    "certificate sample below epsilon", t=t, value=value, epsilon=self.epsilon
                )

    @property
    def is_thick(self) -> bool:
        return self.epsilon > 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "epsilon": self.epsilon,
            "interval": list(self.interval),
            "samples": [
                {"t": t, "slope": slope.to_dict(), "value": value}
                for t, slope, value in self.samples
            ],
        }
