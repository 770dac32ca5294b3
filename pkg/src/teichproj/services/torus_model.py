"""
Exact Teichmüller geometry of the torus.

Teichmüller space of the torus is the upper half-plane. A measured
foliation (a, b) has extremal length |a + b*tau|^2 / Im(tau) at tau, the
Teichmüller distance is half the hyperbolic distance, and SL(2, R) acts
on points by Mobius maps and on foliations compatibly, so that extremal
length is preserved. Every geodesic is the image of the standard one,
t -> i e^{2t}, under a frame matrix stored on the TeichGeodesic.
"""

import math

import numpy as np
from scipy.linalg import eigh

from teichproj.errors import DegenerateInputError, NotPseudoAnosovError
from teichproj.logging_config import get_logger
from teichproj.models.foliation import MeasuredFoliation, ProjectiveClass
from teichproj.models.geodesic import Frame, QuadraticDifferentialData, TeichGeodesic
from teichproj.models.point import MappingClass, TeichPoint

logger = get_logger(__name__)


# ----------------------------------------------------------------------------
# SL(2, R) helpers
# ----------------------------------------------------------------------------


def compose(g: Frame, h: Frame) -> Frame:
    """Matrix product g * h."""
    A, B, C, D = g
    a, b, c, d = h
    return (A * a + B * c, A * b + B * d, C * a + D * c, C * b + D * d)


def invert(g: Frame) -> Frame:
    A, B, C, D = g
    return (D, -B, -C, A)


def mobius(g: Frame, z: complex) -> complex:
    A, B, C, D = g
    return (A * z + B) / (C * z + D)


def act_on_foliation(g: Frame, a: float, b: float) -> tuple[float, float]:
    """
    The action on foliations compatible with `mobius`:
    E_{g.tau}(g.f) = E_tau(f), and g.(h.f) = (gh).f.
    """
    A, B, C, D = g
    return (a * A - b * B, -a * C + b * D)


def base_frame(p: TeichPoint) -> Frame:
    """The affine frame carrying i to p."""
    r = math.sqrt(p.y)
    return (r, p.x / r, 0.0, 1.0 / r)


def rotation(theta: float) -> Frame:
    """Rotation about i; it carries the foliation (1, 0) to (cos, -sin)."""
    c, s = math.cos(theta), math.sin(theta)
    return (c, -s, s, c)


# ----------------------------------------------------------------------------
# Extremal length and distance
# ----------------------------------------------------------------------------


def extremal_length(p: TeichPoint, f: MeasuredFoliation) -> float:
    """E_p(f) = |a + b*tau|^2 / Im(tau)."""
    re = f.a + f.b * p.x
    im = f.b * p.y
    return (re * re + im * im) / p.y


def extremal_lengths(p: TeichPoint, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Vectorized extremal length of the foliations (a[k], b[k]) at p."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    re = a + b * p.x
    im = b * p.y
    return (re * re + im * im) / p.y


def extremal_lengths_xy(x: np.ndarray, y: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Extremal length of (a[k], b[k]) at the point (x[k], y[k]), broadcasting."""
    re = np.add(a, np.multiply(b, x))
    im = np.multiply(b, y)
    return (re * re + im * im) / y


def quadratic_form(p: TeichPoint) -> np.ndarray:
    """The unimodular binary quadratic form with E_p(a, b) = v^T M v."""
    return np.array(
        [[1.0, p.x], [p.x, p.x * p.x + p.y * p.y]],
        dtype=float,
    ) / p.y


def _separation(xp: float, yp: float, xq: float, yq: float) -> float:
    dx, dy = xp - xq, yp - yq
    return (dx * dx + dy * dy) / (yp * yq)


def dilatation(p: TeichPoint, q: TeichPoint) -> float:
    """
    K(p, q) = sup over foliation classes of E_q / E_p.

    This is the largest generalized eigenvalue of the two quadratic forms,
    which for unimodular forms is e^{d_hyp(p, q)}.
    """
    if p == q:
        return 1.0
    u = _separation(p.x, p.y, q.x, q.y)
    return 1.0 + 0.5 * (u + math.sqrt(u * (u + 4.0)))


def teich_distance(p: TeichPoint, q: TeichPoint) -> float:
    """d(p, q) = 1/2 log K(p, q)."""
    if p == q:
        return 0.0
    u = _separation(p.x, p.y, q.x, q.y)
    return 0.5 * math.log1p(0.5 * (u + math.sqrt(u * (u + 4.0))))


def teich_distance_array(
    x1: np.ndarray, y1: np.ndarray, x2: np.ndarray, y2: np.ndarray
) -> np.ndarray:
    """Vectorized teich_distance over broadcastable coordinate arrays."""
    dx = np.subtract(x1, x2)
    dy = np.subtract(y1, y2)
    u = (dx * dx + dy * dy) / (np.multiply(y1, y2))
    return 0.5 * np.log1p(0.5 * (u + np.sqrt(u * (u + 4.0))))


def maximizing_class(p: TeichPoint, q: TeichPoint) -> ProjectiveClass:
    """The projective class realizing the supremum in dilatation(p, q)."""
    _, vectors = eigh(quadratic_form(q), quadratic_form(p))
    a, b = vectors[:, -1]
    return ProjectiveClass.from_vector(float(a), float(b))


# ----------------------------------------------------------------------------
# Geodesics
# ----------------------------------------------------------------------------


def geodesic_from_qd(
    base: TeichPoint,
    horizontal_direction: MeasuredFoliation,
    interval: tuple[float, float],
) -> TeichGeodesic:
    """
    The geodesic through base that shrinks horizontal_direction.

    Phi_h is the positive multiple of horizontal_direction with
    E_base(Phi_h) = 1, Phi_v is the transverse class with E_base(Phi_v) = 1
    and i(Phi_h, Phi_v) = 1, and L(0) = base.
    """
    g0 = base_frame(base)
    a0, b0 = act_on_foliation(invert(g0), horizontal_direction.a, horizontal_direction.b)
    frame = compose(g0, rotation(math.atan2(-b0, a0)))

    phi_h = MeasuredFoliation(*act_on_foliation(frame, 1.0, 0.0))
    phi_v = MeasuredFoliation(*act_on_foliation(frame, 0.0, 1.0))
    return TeichGeodesic(
        base=base,
        qd=QuadraticDifferentialData(phi_h=phi_h, phi_v=phi_v, mass=1.0),
        interval=interval,
        frame=frame,
    )


def geodesic_between(p: TeichPoint, q: TeichPoint) -> TeichGeodesic:
    """The geodesic segment with L(0) = p and L(d(p, q)) = q."""
    d = teich_distance(p, q)
    if d == 0.0:
        raise DegenerateInputError("geodesic_between", "endpoints coincide")

    g0 = base_frame(p)
    z = mobius(invert(g0), q.as_complex())
    # Cayley transform to the disk centred at i
    w = (z - 1j) / (z + 1j)
    theta = -0.5 * math.atan2(w.imag, w.real)
    a, b = act_on_foliation(g0, math.cos(theta), -math.sin(theta))
    return geodesic_from_qd(p, MeasuredFoliation(a, b), (0.0, d))


def vertical_geodesic(interval: tuple[float, float] = (-math.inf, math.inf)) -> TeichGeodesic:
    """The geodesic t -> i e^{2t}, with Phi_h = (1, 0) and Phi_v = (0, 1); its frame is the identity."""
    return geodesic_from_qd(TeichPoint(x=0.0, y=1.0), MeasuredFoliation(1.0, 0.0), interval)


def unit_direction(base: TeichPoint, phi: float) -> MeasuredFoliation:
    """The horizontal direction of the geodesic leaving base at angle phi."""
    a, b = act_on_foliation(base_frame(base), math.cos(phi), -math.sin(phi))
    return MeasuredFoliation(a, b)


def boundary_points(L: TeichGeodesic) -> tuple[float, float]:
    """
    Real boundary points (L(-inf), L(+inf)).

    Returns inf for the point at infinity of the upper half-plane.
    """
    A, B, C, D = L.frame
    start = B / D if D != 0 else math.inf
    end = A / C if C != 0 else math.inf
    return start, end


def distance_profile(L: TeichGeodesic, sigma: TeichPoint) -> tuple[float, float]:
    """
    Coefficients (E_sigma(Phi_h), E_sigma(Phi_v)).

    cosh(2 d(sigma, L(t))) = (E_sigma(Phi_h) e^{2t} + E_sigma(Phi_v) e^{-2t}) / 2.
    """
    return (
        extremal_length(sigma, L.qd.phi_h),
        extremal_length(sigma, L.qd.phi_v),
    )


def distance_to_geodesic_array(L: TeichGeodesic, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """
    Vectorized distance from the points (x[k], y[k]) to L on its interval,
    from the minimizer of distance_profile clamped to the interval.
    """
    (h1, h2), (v1, v2) = (L.qd.phi_h.a, L.qd.phi_h.b), (L.qd.phi_v.a, L.qd.phi_v.b)
    e_h = extremal_lengths_xy(x, y, h1, h2)
    e_v = extremal_lengths_xy(x, y, v1, v2)
    t = np.clip(0.25 * np.log(e_v / e_h), L.interval[0], L.interval[1])
    lx, ly = L.points(t)
    return teich_distance_array(x, y, lx, ly)


# ----------------------------------------------------------------------------
# Mapping-class action
# ----------------------------------------------------------------------------


def _as_frame(m: MappingClass) -> Frame:
    return (float(m.a), float(m.b), float(m.c), float(m.d))


def apply_mapping_class(m: MappingClass, p: TeichPoint) -> TeichPoint:
    return TeichPoint.from_complex(mobius(_as_frame(m), p.as_complex()))


def apply_mapping_class_f(m: MappingClass, f: MeasuredFoliation) -> MeasuredFoliation:
    return MeasuredFoliation(*act_on_foliation(_as_frame(m), f.a, f.b))


def fixed_points(m: MappingClass) -> tuple[float, float]:
    """The two real fixed points of a hyperbolic mapping class, ascending."""
    tr = m.trace
    if abs(tr) <= 2:
        raise NotPseudoAnosovError(tr)
    root = math.sqrt(tr * tr - 4)
    r1 = ((m.a - m.d) - root) / (2 * m.c)
    r2 = ((m.a - m.d) + root) / (2 * m.c)
    return (min(r1, r2), max(r1, r2))


def axis_of(m: MappingClass) -> tuple[TeichGeodesic, float]:
    """
    The invariant geodesic of a pseudo-Anosov class and its translation length.

    The axis is parametrized from the top of the semicircle joining the
    fixed points, oriented so that m translates it by +t0.
    """
    r1, r2 = fixed_points(m)
    base = TeichPoint(x=0.5 * (r1 + r2), y=0.5 * (r2 - r1))
    image = apply_mapping_class(m, base)
    direction = geodesic_between(base, image).qd.phi_h
    axis = geodesic_from_qd(base, direction, (-math.inf, math.inf))

    tr = abs(m.trace)
    t0 = math.log(0.5 * (tr + math.sqrt(tr * tr - 4)))
    logger.debug(
        "Axis computed",
        extra={"matrix": m.to_dict()["matrix"], "translation_length": t0},
    )
    return axis, t0
