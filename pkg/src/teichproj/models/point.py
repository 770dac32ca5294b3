"""Points of the torus Teichmüller space and the mapping-class group."""

import math
from dataclasses import dataclass
from typing import Any

from teichproj.errors import DomainError


@dataclass(frozen=True)
class TeichPoint:
    """
    A marked conformal structure on the torus, tau = x + i*y.

    Equality is coordinate equality; no quotient by the mapping-class
    group is ever taken.
    """

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DomainError("point", "coordinates must be finite", x=self.x, y=self.y)
        if self.y <= 0:
            raise DomainError("point", "y must be positive", x=self.x, y=self.y)

    @classmethod
    def from_complex(cls, tau: complex) -> "TeichPoint":
        """Create a point from a complex number in the upper half-plane."""
        return cls(x=tau.real, y=tau.imag)

    def as_complex(self) -> complex:
        return complex(self.x, self.y)

    def to_dict(self) -> dict[str, Any]:
        return {"x": self.x, "y": self.y}


@dataclass(frozen=True)
class MappingClass:
    """An element of SL(2, Z), acting on the torus by [[a, b], [c, d]]."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        det = self.a * self.d - self.b * self.c
        if det != 1:
            raise DomainError("mapping class", f"determinant must be +1, got {det}", det=det)

    @property
    def trace(self) -> int:
        return self.a + self.d

    def inverse(self) -> "MappingClass":
        return MappingClass(a=self.d, b=-self.b, c=-self.c, d=self.a)

    def compose(self, other: "MappingClass") -> "MappingClass":
        """Matrix product self * other (apply other first)."""
        return MappingClass(
            a=self.a * other.a + self.b * other.c,
            b=self.a * other.b + self.b * other.d,
            c=self.c * other.a + self.d * other.c,
            d=self.c * other.b + self.d * other.d,
        )

    def power(self, n: int) -> "MappingClass":
        if n < 0:
            return self.inverse().power(-n)
        result = MappingClass(1, 0, 0, 1)
        for _ in range(n):
            result = self.compose(result)
        return result

    def to_dict(self) -> dict[str, Any]:
        return {"matrix": [[self.a, self.b], [self.c, self.d]]}
