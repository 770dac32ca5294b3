"""Random points around a geodesic: at a distance, on spheres, in thin regions."""

import math
from typing import Optional

import numpy as np

from teichproj.errors import EndpointClassError
from teichproj.models.foliation import MeasuredFoliation
from teichproj.models.geodesic import TeichGeodesic
from teichproj.models.point import TeichPoint
from teichproj.services.projection_engine import s_alpha
from teichproj.services.torus_model import (
    extremal_length,
    geodesic_from_qd,
    unit_direction,
)

DEFAULT_WINDOW = (-3.0, 3.0)


def sampling_window(L: TeichGeodesic, window: Optional[tuple[float, float]] = None) -> tuple[float, float]:
    """The finite part of L's interval that samples are drawn from."""
    lo, hi = window or DEFAULT_WINDOW
    a, b = L.interval
    if L.is_finite:
        return a, b
    return max(a, lo), min(b, hi)


def shoot(base: TeichPoint, direction: MeasuredFoliation, distance: float) -> TeichPoint:
    """The point at `distance` along the geodesic from base shrinking `direction`."""
    if distance == 0.0:
        return base
    return geodesic_from_qd(base, direction, (0.0, distance)).point(distance)


def perpendicular_direction(L: TeichGeodesic, t: float, side: float) -> MeasuredFoliation:
    """
    Horizontal direction of the geodesic leaving L(t) orthogonally to L.

    Phi_h and Phi_v rescaled to unit length at L(t) are e^t Phi_h and
    e^{-t} Phi_v; their sum and difference point to either side.
    """
    h, v = L.qd.phi_h, L.qd.phi_v
    up, down = math.exp(t), side * math.exp(-t)
    return MeasuredFoliation(a=up * h.a + down * v.a, b=up * h.b + down * v.b)


def point_at_distance(L: TeichGeodesic, t: float, side: float, distance: float) -> TeichPoint:
    """The point at `distance` from L whose nearest point on the line is L(t)."""
    return shoot(L.point(t), perpendicular_direction(L, t, side), distance)


def sample_at_distance(
    L: TeichGeodesic,
    distance: float,
    rng: np.random.Generator,
    window: Optional[tuple[float, float]] = None,
) -> tuple[TeichPoint, float]:
    """
    A random point at the given distance from L, with its foot parameter.

    The foot is uniform on the sampling window and the side is a fair coin.
    """
    a, b = sampling_window(L, window)
    t = float(rng.uniform(a, b)) if b > a else a
    side = 1.0 if rng.random() < 0.5 else -1.0
    return point_at_distance(L, t, side, distance), t


def sample_sphere(
    center: TeichPoint,
    radius: float,
    count: int,
    rng: np.random.Generator,
) -> list[TeichPoint]:
    """Points on the sphere of the given radius, in uniformly random directions."""
    if radius == 0.0:
        return [center] * count
    angles = rng.uniform(0.0, math.pi, count)
    return [shoot(center, unit_direction(center, float(phi)), radius) for phi in angles]


def sample_thin(
    L: TeichGeodesic,
    alpha: MeasuredFoliation,
    delta: float,
    count: int,
    rng: np.random.Generator,
    window: Optional[tuple[float, float]] = None,
) -> list[TeichPoint]:
    """
    Points of Thin(alpha, delta).

    Each starts at a random point of L and flows along the geodesic whose
    horizontal foliation is alpha until E(alpha) reaches a random level in
    (delta / 10, delta].
    """
    if not math.isfinite(s_alpha(L, alpha)):
        raise EndpointClassError("sample_thin", "alpha is an endpoint class of L")
    a, b = sampling_window(L, window)
    points = []
    for _ in range(count):
        base = L.point(float(rng.uniform(a, b)) if b > a else a)
        target = delta * float(rng.uniform(0.1, 1.0))
        length = extremal_length(base, alpha)
        flow = 0.5 * math.log(length / target) if length > target else 0.0
        points.append(shoot(base, alpha, flow))
    return points
