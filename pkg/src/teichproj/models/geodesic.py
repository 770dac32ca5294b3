"""Quadratic differentials and Teichmüller geodesics in the torus model."""

import math
from dataclasses import dataclass, replace
from typing import Any

import numpy as np

from teichproj.errors import DomainError
from teichproj.models.foliation import MeasuredFoliation
from teichproj.models.point import TeichPoint

# SL(2, R) matrix (A, B, C, D) acting on the upper half-plane by Mobius maps
Frame = tuple[float, float, float, float]


@dataclass(frozen=True)
class QuadraticDifferentialData:
    """
    Horizontal and vertical foliations of a unit-area quadratic differential.

    Both foliations have extremal length `mass` at the base point of the
    geodesic they generate, and i(phi_h, phi_v) = mass.
    """

    phi_h: MeasuredFoliation
    phi_v: MeasuredFoliation
    mass: float = 1.0

    def __post_init__(self) -> None:
        i = abs(self.phi_h.a * self.phi_v.b - self.phi_h.b * self.phi_v.a)
        if i <= 0:
            raise DomainError("quadratic differential", "phi_h and phi_v must fill")
        if self.mass <= 0:
            raise DomainError("quadratic differential", "mass must be positive", mass=self.mass)

    def to_dict(self) -> dict[str, Any]:
        return {"phi_h": self.phi_h.to_dict(), "phi_v": self.phi_v.to_dict(), "mass": self.mass}


@dataclass(frozen=True)
class TeichGeodesic:
    """
    A Teichmüller geodesic t -> L(t), parametrized by signed arclength.

    `frame` is the SL(2, R) matrix g with L(t) = g * (i e^{2t}); it carries
    the standard vertical geodesic through i onto this one. Points can be
    evaluated at any real t (the complete line); `interval` is the segment
    the geodesic stands for in projections and certificates.
    """

    base: TeichPoint
    qd: QuadraticDifferentialData
    interval: tuple[float, float]
    frame: Frame

    def __post_init__(self) -> None:
        a, b = self.interval
        if math.isnan(a) or math.isnan(b) or a > b:
            raise DomainError("interval", "need a <= b", interval=list(self.interval))

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.interval[0]) and math.isfinite(self.interval[1])

    @property
    def length(self) -> float:
        return self.interval[1] - self.interval[0]

    def contains(self, t: float) -> bool:
        return self.interval[0] <= t <= self.interval[1]

    def clamp(self, t: float) -> float:
        return min(max(t, self.interval[0]), self.interval[1])

    def restrict(self, a: float, b: float) -> "TeichGeodesic":
        """Same line, different parameter interval."""
        return replace(self, interval=(a, b))

    def frame_point(self, t: float) -> complex:
        """L(t) written in the standard frame: the point i e^{2t}."""
        return complex(0.0, math.exp(2.0 * t))

    def point(self, t: float) -> TeichPoint:
        if not math.isfinite(t):
            raise DomainError("parameter", "geodesic points need finite t", t=t)
        A, B, C, D = self.frame
        w = self.frame_point(t)
        return TeichPoint.from_complex((A * w + B) / (C * w + D))

    def points(self, ts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Vectorized L(t): returns (x, y) arrays."""
        A, B, C, D = self.frame
        w = 1j * np.exp(2.0 * np.asarray(ts, dtype=float))
        z = (A * w + B) / (C * w + D)
        return z.real, z.imag

    def to_dict(self) -> dict[str, Any]:
        return {
            "base": self.base.to_dict(),
            "qd": self.qd.to_dict(),
            "interval": [self.interval[0], self.interval[1]],
        }
