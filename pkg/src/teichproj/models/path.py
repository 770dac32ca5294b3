"""Sampled quasi-geodesic paths and thin regions."""

from dataclasses import dataclass
from typing import Any

from teichproj.errors import DomainError
from teichproj.models.foliation import MeasuredFoliation
from teichproj.models.point import TeichPoint


@dataclass(frozen=True)
class QuasiGeodesicPath:
    """
    A path sampled by arclength, certified as a (K, delta)-quasi-geodesic.

    Instances are built by `teichproj.experiments.paths.make_path`, which
    checks the defining inequality on every sample pair.
    """

    samples: tuple[tuple[float, TeichPoint], ...]
    K: float
    delta: float

    def __post_init__(self) -> None:
        if self.K < 1:
            raise DomainError("K", "must be at least 1", K=self.K)
        if self.delta < 0:
            raise DomainError("delta", "must be non-negative", delta=self.delta)
        if not self.samples:
            raise DomainError("path", "needs at least one sample")

    @property
    def start(self) -> TeichPoint:
        return self.samples[0][1]

    @property
    def end(self) -> TeichPoint:
        return self.samples[-1][1]

    @property
    def length(self) -> float:
        return self.samples[-1][0] - self.samples[0][0]

    def to_dict(self) -> dict[str, Any]:
        return {
            "K": self.K,
            "delta": self.delta,
            "samples": [{"s": s, **p.to_dict()} for s, p in self.samples],
        }


@dataclass(frozen=True)
class ThinRegion:
    """The locus Thin(alpha, delta) where alpha has extremal length at most delta."""

    alpha: MeasuredFoliation
    delta: float

    def __post_init__(self) -> None:
        if self.delta <= 0:
            raise DomainError("delta", "must be positive", delta=self.delta)

    def contains(self, point: TeichPoint) -> bool:
        # |a + b*tau|^2 / Im(tau)
        z = complex(self.alpha.a + self.alpha.b * point.x, self.alpha.b * point.y)
        return abs(z) ** 2 / point.y <= self.delta

    def to_dict(self) -> dict[str, Any]:
        return {"alpha": self.alpha.to_dict(), "delta": self.delta}
