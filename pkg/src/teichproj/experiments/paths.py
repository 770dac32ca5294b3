"""
Piecewise paths and their quasi-geodesic validation.

Pieces live in one coordinate chart (usually the frame of a reference
geodesic); `make_path` samples them by arclength, certifies the (K, delta)
inequality on every pair of samples, and moves the samples to the model
through an optional frame.
"""

from abc import ABC, abstractmethod
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from teichproj.errors import ModelAssertionError, QuasiGeodesicViolation
from teichproj.models.geodesic import Frame, TeichGeodesic
from teichproj.models.path import QuasiGeodesicPath
from teichproj.models.point import TeichPoint
from teichproj.services.torus_model import geodesic_between, mobius, teich_distance, teich_distance_array

# Slack on the pairwise inequality, absorbing rounding in the distances
EXCESS_TOLERANCE = 1e-9
CHORD_TOLERANCE = 1e-8


class PathPiece(ABC):
    """An arclength-parametrized piece of a path."""

    @property
    @abstractmethod
    def length(self) -> float:
        ...

    @abstractmethod
    def point(self, s: float) -> complex:
        """The point at arclength s in [0, length]."""
        ...


@dataclass(frozen=True)
class GeodesicPiece(PathPiece):
    """The geodesic segment between two points."""

    start: complex
    end: complex

    @cached_property
    def _geodesic(self) -> Optional[TeichGeodesic]:
        if self.length == 0.0:
            return None
        return geodesic_between(TeichPoint.from_complex(self.start), TeichPoint.from_complex(self.end))

    @property
    def length(self) -> float:
        return teich_distance(TeichPoint.from_complex(self.start), TeichPoint.from_complex(self.end))

    def point(self, s: float) -> complex:
        geodesic = self._geodesic
        if geodesic is None:
            return self.start
        return geodesic.point(min(max(s, 0.0), geodesic.length)).as_complex()


@dataclass(frozen=True)
class HorocyclePiece(PathPiece):
    """A horizontal segment at fixed height, of Teichmüller length |x1 - x0| / (2 height)."""

    x0: float
    x1: float
    height: float

    @property
    def length(self) -> float:
        return 0.5 * abs(self.x1 - self.x0) / self.height

    def point(self, s: float) -> complex:
        if self.length == 0.0:
            return complex(self.x0, self.height)
        fraction = min(max(s / self.length, 0.0), 1.0)
        return complex(self.x0 + (self.x1 - self.x0) * fraction, self.height)


def pairwise_distances(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return teich_distance_array(x[:, None], y[:, None], x[None, :], y[None, :])


def quasi_geodesic_excess(s: np.ndarray, x: np.ndarray, y: np.ndarray, K: float, delta: float) -> float:
    """max over sample pairs of |s_i - s_j| - K d_ij - delta."""
    gaps = np.abs(s[:, None] - s[None, :])
    return float((gaps - K * pairwise_distances(x, y) - delta).max())


def required_additive_constant(s: np.ndarray, x: np.ndarray, y: np.ndarray, K: float) -> float:
    """The least delta making the samples a (K, delta)-quasi-geodesic."""
    return max(0.0, quasi_geodesic_excess(s, x, y, K, 0.0))


@dataclass(frozen=True)
class SampledPieces:
    """Arclength samples of a piecewise path, in the pieces' chart."""

    s: np.ndarray
    z: np.ndarray
    length: float


def sample_pieces(pieces: Sequence[PathPiece], count: int) -> SampledPieces:
    lengths = np.array([piece.length for piece in pieces])
    total = float(lengths.sum())
    ends = np.cumsum(lengths)
    s = np.linspace(0.0, total, count)
    z = np.empty(count, dtype=complex)
    for k, value in enumerate(s):
        index = min(int(np.searchsorted(ends, value, side="left")), len(pieces) - 1)
        offset = value - (ends[index] - lengths[index])
        z[k] = pieces[index].point(float(offset))
    return SampledPieces(s=s, z=z, length=total)


def validated_samples(
    pieces: Sequence[PathPiece],
    K: float,
    delta: float,
    samples: int = 200,
) -> SampledPieces:
    """
    Sample the pieces and check the (K, delta) inequality in their own chart.

    Raises:
        QuasiGeodesicViolation: If some pair of samples breaks the inequality
        ModelAssertionError: If consecutive samples are farther apart than
            the arclength between them
    """
    sampled = sample_pieces(pieces, samples)
    x, y = sampled.z.real.copy(), sampled.z.imag.copy()

    chords = teich_distance_array(x[:-1], y[:-1], x[1:], y[1:])
    overshoot = float((chords - np.diff(sampled.s)).max()) if samples > 1 else 0.0
    if overshoot > CHORD_TOLERANCE:
        raise ModelAssertionError("path samples must respect arclength", overshoot=overshoot)

    excess = quasi_geodesic_excess(sampled.s, x, y, K, delta)
    if excess > EXCESS_TOLERANCE:
        raise QuasiGeodesicViolation(K, delta, excess)
    return sampled


def to_path(
    sampled: SampledPieces,
    K: float,
    delta: float,
    frame: Optional[Frame] = None,
) -> QuasiGeodesicPath:
    """Carry validated samples to the model through an optional frame."""
    z = sampled.z if frame is None else np.array([mobius(frame, w) for w in sampled.z])
    return QuasiGeodesicPath(
        samples=tuple(
            (float(s), TeichPoint(x=float(w.real), y=float(w.imag))) for s, w in zip(sampled.s, z)
        ),
        K=K,
        delta=delta,
    )


def make_path(
    pieces: Sequence[PathPiece],
    K: float,
    delta: float,
    samples: int = 200,
    frame: Optional[Frame] = None,
) -> QuasiGeodesicPath:
    """
    Sample the pieces and certify the result as a (K, delta)-quasi-geodesic.

    The inequality is checked in the pieces' chart, where a frame would
    otherwise cost precision near the boundary.
    """
    return to_path(validated_samples(pieces, K, delta, samples), K, delta, frame)


def path_coordinates(path: QuasiGeodesicPath) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(s, x, y) arrays of a path's samples."""
    s = np.array([sample[0] for sample in path.samples])
    x = np.array([sample[1].x for sample in path.samples])
    y = np.array([sample[1].y for sample in path.samples])
    return s, x, y
