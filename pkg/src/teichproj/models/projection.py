"""Results of the Minmax and Maxmin projection solvers."""

import math
from dataclasses import dataclass, field, replace
from typing import Any, Optional

from teichproj.models.foliation import ProjectiveClass


def _finite_or_none(value: float) -> Optional[float]:
    return value if math.isfinite(value) else None


@dataclass(frozen=True)
class ProjectionResult:
    """
    Coarse projection of a point sigma to a geodesic L.

    Minmax fields (t_mM, t_star, witness_mM, distance_to_L) and Maxmin
    fields (t_Mm, t_tilde_Mm, witness_Mm, max_ratio) are filled by the
    respective solvers; `merge` combines the two halves.
    """

    t_mM: Optional[tuple[float, float]] = None
    t_star: Optional[float] = None
    witness_mM: Optional[ProjectiveClass] = None
    distance_to_L: Optional[float] = None
    t_Mm: tuple[float, ...] = ()
    t_tilde_Mm: tuple[float, ...] = ()
    clamped_Mm: tuple[bool, ...] = ()
    witness_Mm: Optional[ProjectiveClass] = None
    max_ratio: Optional[float] = None

    def merge(self, other: "ProjectionResult") -> "ProjectionResult":
        """Fill the fields this result lacks from `other`."""
        updates: dict[str, Any] = {}
        for name in self.__dataclass_fields__:
            mine, theirs = getattr(self, name), getattr(other, name)
            if mine in (None, ()) and theirs not in (None, ()):
                updates[name] = theirs
        return replace(self, **updates)

    def to_dict(self) -> dict[str, Any]:
        return {
            "t_mM": list(self.t_mM) if self.t_mM is not None else None,
            "t_star": self.t_star,
            "witness_mM": self.witness_mM.to_dict() if self.witness_mM else None,
            "distance_to_L": self.distance_to_L,
            "t_Mm": [_finite_or_none(t) for t in self.t_Mm],
            "t_tilde_Mm": [_finite_or_none(t) for t in self.t_tilde_Mm],
            "clamped_Mm": list(self.clamped_Mm),
            "witness_Mm": self.witness_Mm.to_dict() if self.witness_Mm else None,
            "max_ratio": self.max_ratio,
        }


@dataclass(frozen=True)
class ProjectionCharacterization:
    """Diameters of both projection sets and how far apart they are."""

    diam_mM: float
    diam_Mm: float
    hausdorff_gap: float
    set_gap: float
    s_lambda: float
    result: ProjectionResult = field(compare=False)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.diam_mM, self.diam_Mm, self.hausdorff_gap)

    def to_dict(self) -> dict[str, Any]:
        return {
            "diam_mM": self.diam_mM,
            "diam_Mm": self.diam_Mm,
            "hausdorff_gap": self.hausdorff_gap,
            "set_gap": self.set_gap,
            "s_lambda": _finite_or_none(self.s_lambda),
            "result": self.result.to_dict(),
        }
