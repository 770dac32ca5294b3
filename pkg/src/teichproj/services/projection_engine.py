"""
Coarse projection of points to Teichmüller geodesics.

Two optimization problems are solved for a point sigma and a geodesic L:

* Minmax: minimize t -> d(sigma, L(t)), the closest-point projection.
* Maxmin: maximize over projective classes alpha the quantity
  r_{s_alpha}(alpha) = e_{s_alpha}(alpha) / E_sigma(alpha), where e_t is the
  two-exponential approximation of E_t built from the intersections of
  alpha with the horizontal and vertical foliations of L, and s_alpha is
  the vertex of e_t.

Along a geodesic every quantity involved is a positive combination
up * e^{2t} + down * e^{-2t}; ExpProfile carries such a combination and
evaluates differences accurately, which the bracketing searches rely on.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional

import numpy as np

from teichproj.config import get_settings
from teichproj.errors import (
    InapplicableCaseError,
    ModelAssertionError,
    NotCertifiedError,
)
from teichproj.logging_config import get_logger
from teichproj.models.certificate import ThicknessCertificate
from teichproj.models.foliation import MeasuredFoliation, ProjectiveClass
from teichproj.models.geodesic import TeichGeodesic
from teichproj.models.point import TeichPoint
from teichproj.models.projection import ProjectionCharacterization, ProjectionResult
from teichproj.services.foliation_calculus import intersection
from teichproj.services.torus_model import (
    distance_profile,
    extremal_length,
    extremal_lengths_xy,
    maximizing_class,
    teich_distance,
)
from teichproj.utils.optimize import (
    bracket_minimum,
    golden_section_max,
    polish_stationary,
    solve_level,
    ternary_search,
)

logger = get_logger(__name__)

# Intersections below this fraction of |f| are treated as zero
ZERO_INTERSECTION_RTOL = 1e-13
QUASI_CONVEXITY_SAMPLES = 16
NEAR_OPTIMAL_TOL = 1e-8
DUPLICATE_THETA_TOL = 1e-9


# ----------------------------------------------------------------------------
# Two-exponential profiles
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class ExpProfile:
    """F(t) = up * e^{2t} + down * e^{-2t} with up, down >= 0."""

    up: float
    down: float

    def value(self, t: float) -> float:
        return self.up * math.exp(2.0 * t) + self.down * math.exp(-2.0 * t)

    def increment(self, s: float, t: float) -> float:
        """F(t) - F(s), without cancellation when s and t are close."""
        h = 2.0 * (t - s)
        return self.up * math.exp(2.0 * s) * math.expm1(h) + self.down * math.exp(
            -2.0 * s
        ) * math.expm1(-h)

    @property
    def vertex(self) -> float:
        """The minimizer over the real line, +-inf when one coefficient vanishes."""
        if self.up == 0.0:
            return math.inf
        if self.down == 0.0:
            return -math.inf
        return 0.25 * math.log(self.down / self.up)

    @property
    def minimum(self) -> float:
        return 2.0 * math.sqrt(self.up * self.down)


def _intersections(L: TeichGeodesic, f: MeasuredFoliation) -> tuple[float, float]:
    """(i(f, Phi_h), i(f, Phi_v)) with negligible values snapped to zero."""
    i_h = intersection(f, L.qd.phi_h)
    i_v = intersection(f, L.qd.phi_v)
    floor = ZERO_INTERSECTION_RTOL * f.norm * max(L.qd.phi_h.norm, L.qd.phi_v.norm)
    return (0.0 if i_h <= floor else i_h, 0.0 if i_v <= floor else i_v)


def e_profile(L: TeichGeodesic, f: MeasuredFoliation) -> ExpProfile:
    """e_t(f) as a profile in t."""
    i_h, i_v = _intersections(L, f)
    return ExpProfile(up=0.5 * i_h * i_h / L.qd.mass, down=0.5 * i_v * i_v / L.qd.mass)


def e_t(L: TeichGeodesic, f: MeasuredFoliation, t: float) -> float:
    """
    e_t(f) = (i(f, Phi_h)^2 / E_t(Phi_h) + i(f, Phi_v)^2 / E_t(Phi_v)) / 2,
    with E_t(Phi_h) = e^{-2t} and E_t(Phi_v) = e^{2t}.
    """
    return e_profile(L, f).value(t)


def extremal_length_along(L: TeichGeodesic, f: MeasuredFoliation, t: float) -> float:
    """E_{L(t)}(f)."""
    return extremal_length(L.point(t), f)


def s_alpha(L: TeichGeodesic, f: MeasuredFoliation) -> float:
    """
    The vertex of t -> e_t(f): 1/2 log(i(f, Phi_v) / i(f, Phi_h)).

    +inf when f is a multiple of Phi_h, -inf when f is a multiple of Phi_v.
    """
    i_h, i_v = _intersections(L, f)
    if i_h == 0.0:
        return math.inf
    if i_v == 0.0:
        return -math.inf
    return 0.5 * math.log(i_v / i_h)


def e_at_vertex(L: TeichGeodesic, f: MeasuredFoliation) -> float:
    """e_{s_alpha}(f) = i(f, Phi_h) i(f, Phi_v)."""
    i_h, i_v = _intersections(L, f)
    return i_h * i_v / L.qd.mass


def exp_envelope_check(L: TeichGeodesic, f: MeasuredFoliation, t: float) -> bool:
    """1/2 e_s exp(2|t - s|) <= e_t(f) <= 2 e_s exp(2|t - s|) at s = s_alpha."""
    s = s_alpha(L, f)
    if not math.isfinite(s):
        raise InapplicableCaseError("exp_envelope_check", "s_alpha is infinite", s_alpha=s)
    envelope = e_at_vertex(L, f) * math.exp(2.0 * abs(t - s))
    value = e_t(L, f, t)
    slack = 1e-12 * value
    return 0.5 * envelope <= value + slack and value <= 2.0 * envelope + slack


def intersection_ratio_I(L: TeichGeodesic, f: MeasuredFoliation, g: MeasuredFoliation, t: float) -> float:
    """I_t(f, g) = i(f, g)^2 / (E_t(f) E_t(g))."""
    point = L.point(t)
    return intersection(f, g) ** 2 / (extremal_length(point, f) * extremal_length(point, g))


def _require_certificate(operation: str, certificate: Optional[ThicknessCertificate]) -> ThicknessCertificate:
    if certificate is None or not certificate.is_thick:
        raise NotCertifiedError(operation)
    return certificate


def sandwich_constant(
    L: TeichGeodesic,
    certificate: Optional[ThicknessCertificate],
    sample_size: int,
    rng: np.random.Generator,
) -> float:
    """
    Empirical max of E_t(f) / e_t(f) over random (t, f) on the certified
    segment, a lower bound for the constant c0 with E_t <= c0 e_t.
    """
    certificate = _require_certificate("sandwich_constant", certificate)
    a, b = certificate.interval
    ts = rng.uniform(a, b, sample_size)
    theta = rng.uniform(0.0, math.pi, sample_size)
    fa, fb = np.cos(theta), np.sin(theta)

    x, y = L.points(ts)
    exact = extremal_lengths_xy(x, y, fa, fb)
    (h1, h2), (v1, v2) = (L.qd.phi_h.a, L.qd.phi_h.b), (L.qd.phi_v.a, L.qd.phi_v.b)
    i_h = np.abs(fa * h2 - fb * h1)
    i_v = np.abs(fa * v2 - fb * v1)
    approx = 0.5 * (i_h**2 * np.exp(2.0 * ts) + i_v**2 * np.exp(-2.0 * ts)) / L.qd.mass

    ratios = exact / approx
    worst = float(ratios.min())
    if worst < 1.0 - 1e-12:
        raise ModelAssertionError("e_t <= E_t", worst_ratio=worst)
    return float(ratios.max())


@dataclass(frozen=True)
class IntersectionScan:
    """Binned minima of I_{s_alpha}(alpha, beta) against |s_alpha - s_beta|."""

    rows: tuple[tuple[float, float, int], ...]
    floor: float
    D: float
    c1: float


def scan_distance_implies_intersection(
    L: TeichGeodesic,
    certificate: Optional[ThicknessCertificate],
    n_samples: int,
    rng: np.random.Generator,
    bin_width: float = 0.1,
) -> IntersectionScan:
    """
    Measure the constants D and c1 with I_{s_alpha}(alpha, beta) >= c1
    whenever |s_alpha - s_beta| >= D.

    Pairs are drawn with s_alpha, s_beta uniform on the certified segment.
    c1 is half the floor (median of the upper quarter of bin minima) and D
    is the smallest bin edge beyond which every bin minimum is at least c1.
    """
    certificate = _require_certificate("scan_distance_implies_intersection", certificate)
    a, b = certificate.interval
    s_f = rng.uniform(a, b, n_samples)
    s_g = rng.uniform(a, b, n_samples)
    sign_f = rng.choice((-1.0, 1.0), n_samples)
    sign_g = rng.choice((-1.0, 1.0), n_samples)

    # (e^s, +-e^{-s}) in the frame of L has vertex s
    A, B, C, D_ = L.frame
    f0a, f0b = np.exp(s_f), sign_f * np.exp(-s_f)
    g0a, g0b = np.exp(s_g), sign_g * np.exp(-s_g)
    fa, fb = f0a * A - f0b * B, -f0a * C + f0b * D_
    ga, gb = g0a * A - g0b * B, -g0a * C + g0b * D_

    x, y = L.points(s_f)
    i_fg = np.abs(fa * gb - fb * ga)
    values = i_fg**2 / (extremal_lengths_xy(x, y, fa, fb) * extremal_lengths_xy(x, y, ga, gb))
    gaps = np.abs(s_f - s_g)
    keep = gaps > 0
    gaps, values = gaps[keep], values[keep]

    bins = np.floor(gaps / bin_width).astype(int)
    rows = []
    for k in np.unique(bins):
        in_bin = values[bins == k]
        rows.append((float(k * bin_width), float(in_bin.min()), int(in_bin.size)))

    minima = np.array([row[1] for row in rows])
    upper = minima[-max(1, len(minima) // 4):]
    floor = float(np.median(upper))
    c1 = 0.5 * floor

    D = rows[-1][0] + bin_width
    for lo, minimum, _ in reversed(rows):
        if minimum < c1:
            break
        D = lo

    logger.info(
        "Intersection scan complete",
        extra={"pairs": int(gaps.size), "bins": len(rows), "D": D, "c1": c1},
    )
    return IntersectionScan(rows=tuple(rows), floor=floor, D=D, c1=c1)


# ----------------------------------------------------------------------------
# Solvers
# ----------------------------------------------------------------------------


def _hausdorff_to_interval(lo: float, hi: float, points: Sequence[float]) -> float:
    """Hausdorff distance between [lo, hi] and a finite set of parameters."""
    outside = max(max(lo - t, 0.0, t - hi) for t in points)
    # the farthest point of [lo, hi] from the set is an end or a midpoint
    probes = [lo, hi]
    ordered = sorted(points)
    probes += [0.5 * (s + t) for s, t in zip(ordered, ordered[1:]) if lo < 0.5 * (s + t) < hi]
    inside = max(min(abs(x - t) for t in points) for x in probes)
    return max(outside, inside)


class ProjectionEngine:
    """
    Minmax and Maxmin projection solvers.

    Tolerances default to the application settings.
    """

    def __init__(
        self,
        search_tolerance: Optional[float] = None,
        sublevel_tolerance: Optional[float] = None,
        maxmin_starts: Optional[int] = None,
    ):
        settings = get_settings()
        self._search_tolerance = search_tolerance or settings.search_tolerance
        self._sublevel_tolerance = sublevel_tolerance or settings.sublevel_tolerance
        self._maxmin_starts = maxmin_starts or settings.maxmin_starts

    @property
    def sublevel_tolerance(self) -> float:
        return self._sublevel_tolerance

    def _assert_quasi_convex(self, profile: ExpProfile, lo: float, hi: float) -> None:
        grid = np.linspace(lo, hi, QUASI_CONVEXITY_SAMPLES)
        rising = False
        for s, t in zip(grid[:-1], grid[1:]):
            step = profile.increment(float(s), float(t))
            scale = 1e-12 * profile.value(float(t))
            if step > scale:
                rising = True
            elif rising and step < -scale:
                raise ModelAssertionError(
                    "distance along geodesic is not quasi-convex", lo=lo, hi=hi, at=float(s)
                )

    def minmax_project(self, sigma: TeichPoint, L: TeichGeodesic) -> ProjectionResult:
        """
        Closest-point projection of sigma to L.

        t_mM is the sub-level set {t : d(sigma, L(t)) <= min + tolerance}.
        """
        e_h, e_v = distance_profile(L, sigma)
        # cosh(2 d(sigma, L(t)))
        profile = ExpProfile(up=0.5 * e_h, down=0.5 * e_v)
        a, b = L.interval

        bracket = bracket_minimum(profile.increment, a, b, start=L.clamp(0.0))
        if not bracket.is_finite:
            raise ModelAssertionError(
                "distance to a geodesic must be coercive", lo=bracket.lo, hi=bracket.hi
            )
        self._assert_quasi_convex(profile, bracket.lo, bracket.hi)
        t_star = ternary_search(profile.increment, bracket.lo, bracket.hi, self._search_tolerance)

        nearest = L.point(t_star)
        d_min = teich_distance(sigma, nearest)
        tol = self._sublevel_tolerance
        level = 2.0 * math.sinh(2.0 * d_min + tol) * math.sinh(tol)
        lo = solve_level(profile.increment, t_star, level, a)
        hi = solve_level(profile.increment, t_star, level, b)

        logger.debug(
            "Minmax solved",
            extra={"t_star": t_star, "distance": d_min, "bracket": [bracket.lo, bracket.hi]},
        )
        return ProjectionResult(
            t_mM=(lo, hi),
            t_star=t_star,
            witness_mM=maximizing_class(sigma, nearest),
            distance_to_L=d_min,
        )

    def _ratio_grid(self, sigma: TeichPoint, L: TeichGeodesic, theta: np.ndarray) -> np.ndarray:
        """r_{s_alpha}(alpha) for alpha = (cos theta, sin theta), s_alpha clamped to L."""
        fa, fb = np.cos(theta), np.sin(theta)
        (h1, h2), (v1, v2) = (L.qd.phi_h.a, L.qd.phi_h.b), (L.qd.phi_v.a, L.qd.phi_v.b)
        i_h = np.abs(fa * h2 - fb * h1)
        i_v = np.abs(fa * v2 - fb * v1)
        floor = ZERO_INTERSECTION_RTOL * max(L.qd.phi_h.norm, L.qd.phi_v.norm)
        i_h = np.where(i_h <= floor, 0.0, i_h)
        i_v = np.where(i_v <= floor, 0.0, i_v)

        a, b = L.interval
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            s = 0.5 * np.log(i_v / i_h)
            s = np.where(i_h == 0.0, np.inf, np.where(i_v == 0.0, -np.inf, s))
            clamped = np.clip(s, a, b)
            inside = clamped == s
            vertex_value = i_h * i_v
            clamped_value = 0.5 * (i_h**2 * np.exp(2.0 * clamped) + i_v**2 * np.exp(-2.0 * clamped))
            e = np.where(inside, vertex_value, clamped_value)
            e = np.where(np.isfinite(clamped), e, 0.0)
        return e / L.qd.mass / extremal_lengths_xy(sigma.x, sigma.y, fa, fb)

    def _clamped_vertex(self, L: TeichGeodesic, f: MeasuredFoliation) -> tuple[float, bool]:
        s = s_alpha(L, f)
        t = L.clamp(s)
        return t, t != s

    def maxmin_project(self, sigma: TeichPoint, L: TeichGeodesic) -> ProjectionResult:
        """
        Maximize r_{s_alpha}(alpha) over projective classes by multistart
        golden-section search.

        t_tilde_Mm holds the (clamped) vertices s_alpha of every class within
        tolerance of the maximum; t_Mm holds the minimizers of E_t over L for
        those classes.
        """
        n = self._maxmin_starts
        step = math.pi / n
        grid = np.arange(n) * step
        values = self._ratio_grid(sigma, L, grid)

        def ratio(theta: float) -> float:
            return float(self._ratio_grid(sigma, L, np.array([theta]))[0])

        candidates: list[tuple[float, float]] = []
        for k in range(n):
            if values[k] >= values[k - 1] and values[k] >= values[(k + 1) % n]:
                theta, _ = golden_section_max(
                    ratio, grid[k] - step, grid[k] + step, tol=self._search_tolerance
                )
                theta = polish_stationary(ratio, theta)
                candidates.append((theta % math.pi, ratio(theta)))

        best = max(value for _, value in candidates)
        near: list[float] = []
        for theta, value in sorted(candidates):
            if value < best - NEAR_OPTIMAL_TOL:
                continue
            duplicate = any(
                min(abs(theta - other), math.pi - abs(theta - other)) < DUPLICATE_THETA_TOL
                for other in near
            )
            if not duplicate:
                near.append(theta)
        # deterministic witness: the best class, ties to the smallest angle
        witness_theta = min(near, key=lambda th: (-ratio(th), th))

        t_tilde, t_mm, flags = [], [], []
        for theta in near:
            f = MeasuredFoliation.from_angle(theta)
            vertex, clamped = self._clamped_vertex(L, f)
            t_tilde.append(vertex)
            flags.append(clamped)
            t_mm.append(self._length_minimizer(L, f))

        logger.debug(
            "Maxmin solved",
            extra={"candidates": len(candidates), "near_optimal": len(near), "max_ratio": best},
        )
        return ProjectionResult(
            t_Mm=tuple(t_mm),
            t_tilde_Mm=tuple(t_tilde),
            clamped_Mm=tuple(flags),
            witness_Mm=ProjectiveClass.from_angle(witness_theta),
            max_ratio=best,
        )

    def _length_minimizer(self, L: TeichGeodesic, f: MeasuredFoliation) -> float:
        """The parameter in [a, b] where E_t(f) is least."""
        i_h, i_v = _intersections(L, f)
        profile = ExpProfile(up=i_h * i_h, down=i_v * i_v)
        a, b = L.interval
        if not math.isfinite(profile.vertex):
            return L.clamp(profile.vertex)
        bracket = bracket_minimum(profile.increment, a, b, start=L.clamp(profile.vertex))
        return ternary_search(profile.increment, bracket.lo, bracket.hi, self._search_tolerance)

    def project(self, sigma: TeichPoint, L: TeichGeodesic) -> ProjectionResult:
        """Run both solvers."""
        return self.minmax_project(sigma, L).merge(self.maxmin_project(sigma, L))

    def distance_to_geodesic(self, sigma: TeichPoint, L: TeichGeodesic) -> float:
        result = self.minmax_project(sigma, L)
        assert result.distance_to_L is not None
        return result.distance_to_L

    def characterize_projection(self, sigma: TeichPoint, L: TeichGeodesic) -> ProjectionCharacterization:
        """
        Diameters of T_mM and of T_Mm with T~_Mm, and how far apart they are.

        hausdorff_gap is the Hausdorff distance between T_mM and T_Mm;
        set_gap is the largest distance from a point of T_Mm or T~_Mm to
        T_mM.
        """
        result = self.project(sigma, L)
        assert result.t_mM is not None
        lo, hi = result.t_mM

        maxmin_set = list(result.t_Mm) + list(result.t_tilde_Mm)
        diam_mm = max(maxmin_set) - min(maxmin_set)

        def to_interval(t: float) -> float:
            return max(lo - t, 0.0, t - hi)

        set_gap = max(to_interval(t) for t in maxmin_set)
        hausdorff = _hausdorff_to_interval(lo, hi, result.t_Mm)
        witness = result.witness_Mm.to_foliation() if result.witness_Mm else None
        s_lambda = s_alpha(L, witness) if witness is not None else math.nan
        return ProjectionCharacterization(
            diam_mM=hi - lo,
            diam_Mm=diam_mm if math.isfinite(diam_mm) else math.inf,
            hausdorff_gap=hausdorff,
            set_gap=set_gap,
            s_lambda=s_lambda,
            result=result,
        )

    def check_ratio_estimates_distance(self, sigma: TeichPoint, L: TeichGeodesic) -> tuple[float, bool]:
        """
        Q = exp(2 d(sigma, L(s_lambda))) / R_{s_lambda}(lambda) for the Maxmin
        witness lambda. Q >= 1 always; Q is a sample of the constant c3.
        """
        result = self.maxmin_project(sigma, L)
        assert result.witness_Mm is not None
        witness = result.witness_Mm.to_foliation()
        s = s_alpha(L, witness)
        if not math.isfinite(s):
            raise InapplicableCaseError("check_ratio_estimates_distance", "s_lambda is infinite")

        point = L.point(s)
        ratio = extremal_length(point, witness) / extremal_length(sigma, witness)
        q = math.exp(2.0 * teich_distance(sigma, point)) / ratio
        if q < 1.0 - 1e-10:
            raise ModelAssertionError("R_s(lambda) <= exp(2 d(sigma, L(s)))", Q=q)
        return q, True


def check_product_bound(
    L: TeichGeodesic,
    f: MeasuredFoliation,
    g: MeasuredFoliation,
    sigma: TeichPoint,
    D: float,
    c1: float,
) -> bool:
    """
    R_{s_f}(f) R_{s_f}(g) <= 1 / c1 whenever |s_f - s_g| > D.

    A violation means the measured (D, c1) pair needs re-fitting; it is
    logged and reported, not raised.
    """
    s_f, s_g = s_alpha(L, f), s_alpha(L, g)
    if not (math.isfinite(s_f) and math.isfinite(s_g)) or abs(s_f - s_g) <= D:
        raise InapplicableCaseError(
            "check_product_bound", "need |s_f - s_g| > D", s_f=s_f, s_g=s_g, D=D
        )
    point = L.point(s_f)
    product = (
        extremal_length(point, f) / extremal_length(sigma, f)
        * extremal_length(point, g) / extremal_length(sigma, g)
    )
    holds = product <= 1.0 / c1
    if not holds:
        logger.warning(
            "Product bound violated",
            extra={"product": product, "bound": 1.0 / c1, "gap": abs(s_f - s_g)},
        )
    return holds


# ----------------------------------------------------------------------------
# Module-level entry points with default tolerances
# ----------------------------------------------------------------------------


def minmax_project(sigma: TeichPoint, L: TeichGeodesic) -> ProjectionResult:
    return ProjectionEngine().minmax_project(sigma, L)


def maxmin_project(sigma: TeichPoint, L: TeichGeodesic) -> ProjectionResult:
    return ProjectionEngine().maxmin_project(sigma, L)


def project(sigma: TeichPoint, L: TeichGeodesic) -> ProjectionResult:
    return ProjectionEngine().project(sigma, L)


def characterize_projection(sigma: TeichPoint, L: TeichGeodesic) -> ProjectionCharacterization:
    return ProjectionEngine().characterize_projection(sigma, L)


def check_ratio_estimates_distance(sigma: TeichPoint, L: TeichGeodesic) -> tuple[float, bool]:
    return ProjectionEngine().check_ratio_estimates_distance(sigma, L)


def distance_to_geodesic(sigma: TeichPoint, L: TeichGeodesic) -> float:
    return ProjectionEngine().distance_to_geodesic(sigma, L)


def projection_diameter(results: Sequence[ProjectionResult]) -> float:
    """Diameter of the union of the t_mM intervals of several projections."""
    lows = [r.t_mM[0] for r in results if r.t_mM is not None]
    highs = [r.t_mM[1] for r in results if r.t_mM is not None]
    return max(highs) - min(lows)


__all__ = [
    "ExpProfile",
    "IntersectionScan",
    "ProjectionEngine",
    "characterize_projection",
    "check_product_bound",
    "check_ratio_estimates_distance",
    "distance_to_geodesic",
    "e_at_vertex",
    "e_profile",
    "e_t",
    "exp_envelope_check",
    "extremal_length_along",
    "intersection_ratio_I",
    "maxmin_project",
    "minmax_project",
    "project",
    "projection_diameter",
    "s_alpha",
    "sandwich_constant",
    "scan_distance_implies_intersection",
]
