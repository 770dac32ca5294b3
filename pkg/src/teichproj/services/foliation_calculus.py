"""
Measured foliations on the torus.

Intersection pairing, slope enumeration, the systole by Gauss-Lagrange
reduction, sampled thickness certificates, and the slope-enumeration
oracle for the Teichmüller distance.
"""

import math
from functools import lru_cache
from typing import Optional

import numpy as np

from teichproj.config import get_settings
from teichproj.errors import DomainError, InfiniteIntervalError
from teichproj.logging_config import get_logger
from teichproj.models.certificate import ThicknessCertificate
from teichproj.models.foliation import MeasuredFoliation, SlopeCurve
from teichproj.models.geodesic import TeichGeodesic
from teichproj.models.point import TeichPoint
from teichproj.services.torus_model import extremal_length, extremal_lengths
from teichproj.utils.validators import validate_depth

logger = get_logger(__name__)

# Relative tolerance for treating two systole candidates as tied
SYSTOLE_TIE_RTOL = 1e-12
# Largest coefficient the Stern-Brocot refinement will build
MAX_SLOPE_ENTRY = 10_000_000


def intersection(f: MeasuredFoliation, g: MeasuredFoliation) -> float:
    """i(f, g) = |f.a g.b - f.b g.a|."""
    return abs(f.a * g.b - f.b * g.a)


def check_length_intersection(p: TeichPoint, f: MeasuredFoliation, g: MeasuredFoliation) -> bool:
    """E_p(f) E_p(g) >= i(f, g)^2, with relative slack 1e-9."""
    product = extremal_length(p, f) * extremal_length(p, g)
    return product >= intersection(f, g) ** 2 - 1e-9 * product


# ----------------------------------------------------------------------------
# Slope enumeration
# ----------------------------------------------------------------------------


def slope_array(depth: int) -> tuple[np.ndarray, np.ndarray]:
    """
    All normalized primitive slopes with |p|, |q| <= depth as integer
    arrays (p, q), ordered by (q, p).
    """
    validate_depth(depth)
    q, p = np.meshgrid(np.arange(0, depth + 1), np.arange(-depth, depth + 1), indexing="ij")
    p, q = p.ravel(), q.ravel()
    keep = (np.gcd(p, q) == 1) & ((q > 0) | (p == 1))
    return p[keep], q[keep]


def slope_enumerate(depth: int) -> list[SlopeCurve]:
    """Every primitive slope with |p|, |q| <= depth, once each, ordered by (q, p)."""
    p, q = slope_array(depth)
    return [SlopeCurve(p=int(a), q=int(b)) for a, b in zip(p, q)]


# ----------------------------------------------------------------------------
# Systole
# ----------------------------------------------------------------------------


def _reduce_basis(tau: complex) -> tuple[tuple[int, int, complex], tuple[int, int, complex]]:
    """
    Gauss-Lagrange reduction of the lattice spanned by 1 and tau.

    Each basis vector is carried as (m, n, m + n*tau), so the integer
    coefficients are the slope of the corresponding curve.
    """
    u = (1, 0, complex(1.0, 0.0))
    v = (0, 1, tau)
    if abs(v[2]) < abs(u[2]):
        u, v = v, u
    while True:
        mu = round((v[2] * u[2].conjugate()).real / abs(u[2]) ** 2)
        v = (v[0] - mu * u[0], v[1] - mu * u[1], v[2] - mu * u[2])
        if abs(v[2]) >= abs(u[2]):
            return u, v
        u, v = v, u


def systole(p: TeichPoint) -> tuple[SlopeCurve, float]:
    """
    The slope of least extremal length at p and that length.

    Ties are broken by the smallest normalized (q, p).
    """
    u, v = _reduce_basis(p.as_complex())
    candidates = [
        (u[0], u[1]),
        (v[0], v[1]),
        (u[0] + v[0], u[1] + v[1]),
        (u[0] - v[0], u[1] - v[1]),
    ]
    scored = []
    for m, n in candidates:
        slope = SlopeCurve.normalized(m, n)
        scored.append((extremal_length(p, slope.as_foliation()), slope))
    best = min(value for value, _ in scored)
    tied = [slope for value, slope in scored if value <= best * (1.0 + SYSTOLE_TIE_RTOL)]
    slope = min(tied, key=SlopeCurve.sort_key)
    return slope, extremal_length(p, slope.as_foliation())


# ----------------------------------------------------------------------------
# Thickness certificates
# ----------------------------------------------------------------------------


def certify_precompact(L: TeichGeodesic, step: Optional[float] = None) -> ThicknessCertificate:
    """
    Sample the systole along L at spacing at most `step`.

    The minimum becomes the certificate's epsilon. This is a sampled
    lower-bound estimate, not a proof.
    """
    if step is None:
        step = get_settings().certify_step
    if step <= 0:
        raise DomainError("step", "must be positive", step=step)
    if not L.is_finite:
        raise InfiniteIntervalError("certify_precompact", L.interval)

    a, b = L.interval
    count = max(1, math.ceil((b - a) / step)) + 1 if b > a else 1
    samples = []
    for t in np.linspace(a, b, count):
        slope, value = systole(L.point(float(t)))
        samples.append((float(t), slope, value))
    epsilon = min(value for _, _, value in samples)

    logger.info(
        "Geodesic certified",
        extra={"interval": [a, b], "samples": len(samples), "epsilon": epsilon},
    )
    return ThicknessCertificate(epsilon=epsilon, samples=tuple(samples), interval=(a, b))


# ----------------------------------------------------------------------------
# Slope-enumeration oracle for the dilatation
# ----------------------------------------------------------------------------


@lru_cache(maxsize=8)
def _angular_slopes(depth: int) -> tuple[np.ndarray, np.ndarray]:
    """Slopes with |p|, |q| <= depth sorted by angle in [0, pi)."""
    a, b = slope_array(depth)
    order = np.argsort(np.arctan2(b, a), kind="stable")
    a, b = a[order], b[order]
    a.flags.writeable = False
    b.flags.writeable = False
    return a, b


class _RatioOracle:
    """E_q / E_p on integer classes, with the best class seen so far."""

    def __init__(self, p: TeichPoint, q: TeichPoint):
        self._p = p
        self._q = q
        self.best_ratio = -math.inf
        self.best_vector = (1, 0)

    def lengths(self, v: tuple[int, int]) -> tuple[float, float]:
        f = MeasuredFoliation(float(v[0]), float(v[1]))
        return extremal_length(self._p, f), extremal_length(self._q, f)

    def observe(self, v: tuple[int, int]) -> None:
        e_p, e_q = self.lengths(v)
        ratio = e_q / e_p
        if ratio > self.best_ratio:
            self.best_ratio = ratio
            self.best_vector = v

    def increasing_toward(self, v: tuple[int, int], w: tuple[int, int]) -> bool:
        """Whether E_q / E_p increases when v is tilted toward w."""
        self.observe(v)
        plus = (v[0] + w[0], v[1] + w[1])
        minus = (v[0] - w[0], v[1] - w[1])
        e_p, e_q = self.lengths(v)
        plus_p, plus_q = self.lengths(plus)
        minus_p, minus_q = self.lengths(minus)
        # bilinear forms by polarization
        b_p = 0.25 * (plus_p - minus_p)
        b_q = 0.25 * (plus_q - minus_q)
        return b_q * e_p - e_q * b_p > 0


def _too_large(v: tuple[int, int]) -> bool:
    return max(abs(v[0]), abs(v[1])) > MAX_SLOPE_ENTRY


def _gallop(oracle: _RatioOracle, left: tuple[int, int], right: tuple[int, int]) -> int:
    """Largest k >= 1 with the ratio still increasing at left + k*right toward right."""

    def holds(k: int) -> bool:
        v = (left[0] + k * right[0], left[1] + k * right[1])
        return not _too_large(v) and oracle.increasing_toward(v, right)

    lo, hi = 1, 2
    while holds(hi):
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if holds(mid):
            lo = mid
        else:
            hi = mid
    return lo


def _descend(oracle: _RatioOracle, left: tuple[int, int], right: tuple[int, int], moves: int) -> None:
    """
    Stern-Brocot descent toward the maximizer in the unimodular cone
    between left and right, taking runs of equal moves in one step.
    """
    for _ in range(moves):
        if _too_large(left) or _too_large(right):
            return
        oracle.observe(left)
        oracle.observe(right)
        mediant = (left[0] + right[0], left[1] + right[1])
        if oracle.increasing_toward(mediant, right):
            k = _gallop(oracle, left, right)
            left, right = (
                (left[0] + k * right[0], left[1] + k * right[1]),
                (left[0] + (k + 1) * right[0], left[1] + (k + 1) * right[1]),
            )
        elif oracle.increasing_toward(mediant, left):
            k = _gallop(oracle, right, left)
            left, right = (
                (right[0] + (k + 1) * left[0], right[1] + (k + 1) * left[1]),
                (right[0] + k * left[0], right[1] + k * left[1]),
            )
        else:
            return


def slope_supremum(p: TeichPoint, q: TeichPoint, depth: Optional[int] = None) -> tuple[float, SlopeCurve]:
    """
    Independent estimate of sup_alpha E_q(alpha) / E_p(alpha) over slopes.

    All slopes with |p|, |q| <= depth are scored, then the Farey intervals
    on both sides of the best one are refined by Stern-Brocot descent
    steered only by extremal lengths of integer classes. Returns the best
    ratio found and its slope.
    """
    if depth is None:
        depth = get_settings().slope_oracle_depth
    a, b = _angular_slopes(depth)
    ratios = extremal_lengths(q, a, b) / extremal_lengths(p, a, b)
    k = int(np.argmax(ratios))

    best = (int(a[k]), int(b[k]))
    n = len(a)
    # neighbors in angular order; wrapping past pi flips the sign
    if k > 0:
        prev = (int(a[k - 1]), int(b[k - 1]))
    else:
        prev = (-int(a[n - 1]), -int(b[n - 1]))
    if k < n - 1:
        nxt = (int(a[k + 1]), int(b[k + 1]))
    else:
        nxt = (-int(a[0]), -int(b[0]))

    oracle = _RatioOracle(p, q)
    oracle.observe(best)
    _descend(oracle, prev, best, depth)
    _descend(oracle, best, nxt, depth)

    slope = SlopeCurve.normalized(*oracle.best_vector)
    logger.debug(
        "Slope supremum",
        extra={"depth": depth, "ratio": oracle.best_ratio, "slope": slope.to_dict()},
    )
    return oracle.best_ratio, slope
