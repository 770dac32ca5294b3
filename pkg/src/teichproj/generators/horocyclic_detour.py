"""
Detour along horocycles.

In the frame of L the path runs horizontally at the height of L(a), up
the vertical geodesic to the height of L(b), and horizontally back. When
the forward endpoint class of L is the curve being pinched, both
horizontal legs stay inside its thin region.
"""

import math

import numpy as np

from teichproj.experiments.paths import GeodesicPiece, HorocyclePiece, PathPiece
from teichproj.interfaces.path_generator import PathGenerator
from teichproj.models.geodesic import TeichGeodesic


class HorocyclicDetour(PathGenerator):
    """
    Horizontal offset of width * (b - a) * Im L(a) on the given side.

    The lower horizontal leg has length width * (b - a) / 2.
    """

    def __init__(self, side: float = 1.0, width: float = 1.0):
        self._side = math.copysign(1.0, side)
        self._width = width

    @property
    def name(self) -> str:
        return "horocyclic" + ("+" if self._side > 0 else "-")

    def pieces(
        self,
        L: TeichGeodesic,
        a: float,
        b: float,
        rng: np.random.Generator,
        attempt: int,
    ) -> list[PathPiece]:
        low = L.frame_point(a).imag
        high = L.frame_point(b).imag
        offset = self._side * self._width * (b - a) * low
        return [
            HorocyclePiece(0.0, offset, low),
            GeodesicPiece(complex(offset, low), complex(offset, high)),
            HorocyclePiece(offset, 0.0, high),
        ]
