"""Measured foliations, simple closed curves and projective classes on the torus."""

import math
from dataclasses import dataclass
from typing import Any

from teichproj.errors import DomainError


@dataclass(frozen=True)
class MeasuredFoliation:
    """
    A measured foliation on the torus, encoded as a nonzero real pair.

    The direction is the projective class; the length of (a, b) is the
    transverse measure.
    """

    a: float
    b: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError("foliation", "components must be finite", a=self.a, b=self.b)
        if self.a == 0 and self.b == 0:
            raise DomainError("foliation", "zero foliation")

    @classmethod
    def from_angle(cls, theta: float, measure: float = 1.0) -> "MeasuredFoliation":
        return cls(a=measure * math.cos(theta), b=measure * math.sin(theta))

    def scaled(self, s: float) -> "MeasuredFoliation":
        if s <= 0:
            raise DomainError("scale", "must be positive", s=s)
        return MeasuredFoliation(a=s * self.a, b=s * self.b)

    @property
    def norm(self) -> float:
        return math.hypot(self.a, self.b)

    def projective_class(self) -> "ProjectiveClass":
        return ProjectiveClass.from_vector(self.a, self.b)

    def to_dict(self) -> dict[str, Any]:
        return {"a": self.a, "b": self.b}


@dataclass(frozen=True)
class SlopeCurve:
    """A primitive slope p/q, i.e. a simple closed curve on the torus."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if (self.p, self.q) == (0, 0):
            raise DomainError("slope", "zero slope")
        if math.gcd(self.p, self.q) != 1:
            raise DomainError("slope", "not primitive", p=self.p, q=self.q)
        if self.q < 0 or (self.q == 0 and self.p != 1):
            raise DomainError("slope", "not normalized (need q > 0, or q = 0 and p = 1)")

    @classmethod
    def normalized(cls, p: int, q: int) -> "SlopeCurve":
        """Create a slope from any nonzero integer vector, reducing and fixing the sign."""
        g = math.gcd(p, q)
        if g == 0:
            raise DomainError("slope", "zero slope")
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        return cls(p=p, q=q)

    def as_foliation(self) -> MeasuredFoliation:
        return MeasuredFoliation(a=float(self.p), b=float(self.q))

    def sort_key(self) -> tuple[int, int]:
        return (self.q, self.p)

    def to_dict(self) -> dict[str, Any]:
        return {"p": self.p, "q": self.q}


@dataclass(frozen=True)
class ProjectiveClass:
    """A point of PMF(torus): the angle of a direction, in [0, pi)."""

    theta: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.theta < math.pi):
            raise DomainError("projective class", "theta must lie in [0, pi)", theta=self.theta)

    @classmethod
    def from_angle(cls, theta: float) -> "ProjectiveClass":
        reduced = math.fmod(theta, math.pi)
        if reduced < 0:
            reduced += math.pi
        if reduced >= math.pi:
            reduced = 0.0
        return cls(theta=reduced)

    @classmethod
    def from_vector(cls, a: float, b: float) -> "ProjectiveClass":
        if a == 0 and b == 0:
            raise DomainError("projective class", "zero vector")
        return cls.from_angle(math.atan2(b, a))

    def to_foliation(self, measure: float = 1.0) -> MeasuredFoliation:
        return MeasuredFoliation.from_angle(self.theta, measure)

    def to_dict(self) -> dict[str, Any]:
        a, b = math.cos(self.theta), math.sin(self.theta)
        return {"theta": self.theta, "direction": [a, b]}
