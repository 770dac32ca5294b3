"""
Single triangular detour.

The path leaves L(a) along a geodesic to an apex placed off the line,
then returns along a geodesic to L(b).
"""

import numpy as np

from teichproj.experiments.paths import GeodesicPiece, PathPiece
from teichproj.interfaces.path_generator import MAX_ATTEMPTS, PathGenerator, frame_offset
from teichproj.models.geodesic import TeichGeodesic


class TriangularDetour(PathGenerator):
    """
    Detour through one apex at a random height above a random point of the segment.

    The apex sits over a + U(0.25, 0.75)(b - a), at a distance drawn from
    [0, max_height * 2^-attempt] on a random side.
    """

    def __init__(self, max_height: float = 1.0):
        self._max_height = max_height

    @property
    def name(self) -> str:
        return "triangular"

    def pieces(
        self,
        L: TeichGeodesic,
        a: float,
        b: float,
        rng: np.random.Generator,
        attempt: int,
    ) -> list[PathPiece]:
        fraction = float(rng.uniform(0.25, 0.75))
        side = 1.0 if rng.random() < 0.5 else -1.0
        height = float(rng.uniform(0.0, self._max_height * 0.5**attempt))
        if attempt >= MAX_ATTEMPTS:
            height = 0.0

        apex = frame_offset(a + fraction * (b - a), side, height)
        return [
            GeodesicPiece(L.frame_point(a), apex),
            GeodesicPiece(apex, L.frame_point(b)),
        ]
