"""
PathGenerator interface definition.

A path generator proposes piecewise paths between two points of a
geodesic. Proposals are written in the geodesic's frame, where L(t) is
the point i e^{2t}, and are validated by `make_path`; a rejected
proposal is retried with a larger attempt number, and generators make
their detours smaller as the attempt number grows.
"""

import math
from abc import ABC, abstractmethod

import numpy as np

from teichproj.experiments.paths import PathPiece
from teichproj.models.geodesic import TeichGeodesic

# After this many rejected proposals generators fall back to the geodesic itself
MAX_ATTEMPTS = 20


def frame_offset(t: float, side: float, distance: float) -> complex:
    """
    Frame coordinates of the point at `distance` from L(t) along the
    geodesic orthogonal to L there, on the given side.
    """
    radius = math.exp(2.0 * t)
    angle = 2.0 * distance
    return radius * complex(side * math.tanh(angle), 1.0 / math.cosh(angle))


class PathGenerator(ABC):
    """Abstract base class for quasi-geodesic path generators."""

    @property
    @abstractmethod
    def name(self) -> str:
        """Return the generator name (e.g. 'triangular', 'hops')."""
        raise NotImplementedError

    @abstractmethod
    def pieces(
        self,
        L: TeichGeodesic,
        a: float,
        b: float,
        rng: np.random.Generator,
        attempt: int,
    ) -> list[PathPiece]:
        """
        Propose a path from L(a) to L(b) in the frame of L.

        Args:
            L: The reference geodesic
            a: Start parameter
            b: End parameter, b >= a
            rng: Random stream owned by this path
            attempt: Number of proposals already rejected for this path

        Returns:
            Pieces whose concatenation runs from L(a) to L(b)
        """
        raise NotImplementedError
