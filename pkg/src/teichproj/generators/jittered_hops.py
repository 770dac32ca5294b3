"""Geodesic hops between jittered waypoints."""

import math

import numpy as np

from teichproj.experiments.paths import GeodesicPiece, PathPiece
from teichproj.interfaces.path_generator import MAX_ATTEMPTS, PathGenerator, frame_offset
from teichproj.models.geodesic import TeichGeodesic


class JitteredHops(PathGenerator):
    """
    Waypoints at unit spacing along the segment, each pushed off L by a
    random distance in [0, jitter * 2^-attempt], joined by geodesics.
    """

    def __init__(self, jitter: float = 0.3, spacing: float = 1.0):
        self._jitter = jitter
        self._spacing = spacing

    @property
    def name(self) -> str:
        return "hops"

    def pieces(
        self,
        L: TeichGeodesic,
        a: float,
        b: float,
        rng: np.random.Generator,
        attempt: int,
    ) -> list[PathPiece]:
        hops = max(1, math.ceil((b - a) / self._spacing))
        scale = 0.0 if attempt >= MAX_ATTEMPTS else self._jitter * 0.5**attempt

        waypoints = [L.frame_point(a)]
        for t in np.linspace(a, b, hops + 1)[1:-1]:
            side = 1.0 if rng.random() < 0.5 else -1.0
            waypoints.append(frame_offset(float(t), side, float(rng.uniform(0.0, scale))))
        waypoints.append(L.frame_point(b))

        return [GeodesicPiece(p, q) for p, q in zip(waypoints, waypoints[1:])]
