"""Tests for the projection engine."""

import math

import numpy as np
import pytest
from scipy.optimize import brentq

from teichproj.errors import InapplicableCaseError, NotCertifiedError
from teichproj.experiments.sampling import sample_at_distance
from teichproj.experiments.stats import fit_line
from teichproj.models.foliation import MeasuredFoliation
from teichproj.models.point import TeichPoint
from teichproj.services.foliation_calculus import intersection
from teichproj.services.projection_engine import (
    ExpProfile,
    ProjectionEngine,
    check_product_bound,
    e_at_vertex,
    e_t,
    exp_envelope_check,
    extremal_length_along,
    intersection_ratio_I,
    projection_diameter,
    s_alpha,
    sandwich_constant,
    scan_distance_implies_intersection,
)
from teichproj.services.torus_model import (
    distance_to_geodesic_array,
    geodesic_from_qd,
    teich_distance_array,
    unit_direction,
)

SIGMA = TeichPoint(1.0, 1.0)
T_STAR = 0.25 * math.log(2.0)


@pytest.fixture
def engine() -> ProjectionEngine:
    """Engine with the default tolerances."""
    return ProjectionEngine(search_tolerance=1e-10, sublevel_tolerance=1e-8, maxmin_starts=360)


class TestExpProfile:
    """Tests for two-exponential profiles."""

    def test_vertex_and_minimum(self) -> None:
        """Test the vertex 1/4 log(down / up) and the minimum 2 sqrt(up down)."""
        profile = ExpProfile(up=1.0, down=2.0)

        assert profile.vertex == pytest.approx(T_STAR)
        assert profile.value(profile.vertex) == pytest.approx(profile.minimum)

    def test_degenerate_vertex(self) -> None:
        """Test infinite vertices when a coefficient vanishes."""
        assert ExpProfile(up=0.0, down=1.0).vertex == math.inf
        assert ExpProfile(up=1.0, down=0.0).vertex == -math.inf

    def test_increment_is_accurate(self) -> None:
        """Test F(t) - F(s) for nearby s, t without cancellation."""
        profile = ExpProfile(up=3.0, down=5.0)

        step = profile.increment(0.1, 0.1 + 1e-9)

        derivative = 2.0 * (3.0 * math.exp(0.2) - 5.0 * math.exp(-0.2))
        assert step == pytest.approx(derivative * 1e-9, rel=1e-6)


class TestSandwich:
    """Tests for the e_t approximation of extremal length."""

    def test_e_t_below_extremal_length(self, rng: np.random.Generator, golden_axis) -> None:
        """Test e_t <= E_t on random classes and parameters."""
        for _ in range(2000):
            f = MeasuredFoliation.from_angle(float(rng.uniform(0, math.pi)))
            t = float(rng.uniform(-3, 3))
            exact = extremal_length_along(golden_axis, f, t)

            assert e_t(golden_axis, f, t) <= exact * (1 + 1e-12)

    def test_sandwich_constant_is_stable(self, golden_segment, golden_certificate) -> None:
        """Test c0 is finite, at least 1 and agrees across seeds within 5%."""
        first = sandwich_constant(golden_segment, golden_certificate, 10_000, np.random.default_rng(1))
        second = sandwich_constant(golden_segment, golden_certificate, 10_000, np.random.default_rng(2))

        assert 1.0 <= first < math.inf
        assert abs(first - second) <= 0.05 * max(first, second)
        # E_t = 2 e_t exactly in the torus model
        assert first == pytest.approx(2.0, rel=1e-9)

    def test_sandwich_needs_certificate(self, golden_segment, rng: np.random.Generator) -> None:
        """Test that an uncertified segment is rejected."""
        with pytest.raises(NotCertifiedError):
            sandwich_constant(golden_segment, None, 10, rng)


class TestVertex:
    """Tests for s_alpha and the exponential envelope."""

    def test_closed_form_against_root_finding(self, rng: np.random.Generator) -> None:
        """Test s_alpha against a root of d/dt e_t, and the envelope at random t."""
        worst = 0.0
        for _ in range(10_000):
            base = TeichPoint(float(rng.uniform(-1, 1)), float(rng.uniform(0.5, 2.0)))
            L = geodesic_from_qd(base, unit_direction(base, float(rng.uniform(0, math.pi))), (-math.inf, math.inf))
            f = MeasuredFoliation.from_angle(float(rng.uniform(0.01, math.pi - 0.01)))
            i_h, i_v = intersection(f, L.qd.phi_h), intersection(f, L.qd.phi_v)
            if min(i_h, i_v) < 1e-3:
                continue

            root = brentq(
                lambda t: i_h * i_h * math.exp(2 * t) - i_v * i_v * math.exp(-2 * t),
                -30.0,
                30.0,
                xtol=1e-15,
            )
            worst = max(worst, abs(root - s_alpha(L, f)))
            assert exp_envelope_check(L, f, float(rng.uniform(-5, 5)))

        assert worst <= 1e-9

    def test_vertex_value(self, vertical) -> None:
        """Test e_{s_alpha}(alpha) = i_h i_v."""
        f = MeasuredFoliation(2.0, 3.0)

        s = s_alpha(vertical, f)

        assert e_t(vertical, f, s) == pytest.approx(e_at_vertex(vertical, f))
        assert e_at_vertex(vertical, f) == pytest.approx(6.0)

    def test_endpoint_classes(self, vertical) -> None:
        """Test s_alpha = +inf for Phi_h and -inf for Phi_v."""
        assert s_alpha(vertical, MeasuredFoliation(1.0, 0.0)) == math.inf
        assert s_alpha(vertical, MeasuredFoliation(0.0, 2.0)) == -math.inf
        with pytest.raises(InapplicableCaseError):
            exp_envelope_check(vertical, MeasuredFoliation(1.0, 0.0), 0.0)

    def test_intersection_ratio_at_most_one(self, rng: np.random.Generator, golden_axis) -> None:
        """Test I_t(f, g) <= 1 from the length-intersection inequality."""
        for _ in range(200):
            f = MeasuredFoliation.from_angle(float(rng.uniform(0, math.pi)))
            g = MeasuredFoliation.from_angle(float(rng.uniform(0, math.pi)))

            assert intersection_ratio_I(golden_axis, f, g, float(rng.uniform(-2, 2))) <= 1 + 1e-9


class TestWorkedInstance:
    """Tests for the projection of (1, 1) to the vertical geodesic."""

    def test_minmax_optimum(self, vertical, engine: ProjectionEngine) -> None:
        """Test t* = log(2) / 4 against the closed form and a grid."""
        result = engine.minmax_project(SIGMA, vertical)
        grid = np.linspace(-1.0, 1.0, 200_001)
        x, y = vertical.points(grid)
        distances = teich_distance_array(SIGMA.x, SIGMA.y, x, y)

        assert result.t_star == pytest.approx(T_STAR, abs=1e-8)
        assert abs(result.t_star - grid[int(np.argmin(distances))]) <= 2e-5
        lo, hi = result.t_mM
        assert lo <= T_STAR <= hi
        assert result.distance_to_L == pytest.approx(0.5 * math.acosh(math.sqrt(2.0)), abs=1e-12)

    def test_maxmin_witness(self, vertical, engine: ProjectionEngine) -> None:
        """Test the witness slope |a| / |b| = sqrt 2 and its vertex at t*."""
        result = engine.maxmin_project(SIGMA, vertical)
        witness = result.witness_Mm.to_foliation()

        assert abs(witness.a / witness.b) == pytest.approx(math.sqrt(2.0), rel=1e-7)
        assert s_alpha(vertical, witness) == pytest.approx(T_STAR, abs=1e-8)
        assert result.max_ratio == pytest.approx((1 + math.sqrt(2.0)) / 2, rel=1e-9)

    def test_projection_sets_coincide(self, vertical, engine: ProjectionEngine) -> None:
        """Test that T~_Mm and T_Mm lie within 1e-6 of T_mM."""
        characterization = engine.characterize_projection(SIGMA, vertical)

        assert characterization.set_gap <= 1e-6
        # T_mM is a sublevel interval at distance tolerance tol, so its half-width is of order sqrt(tol).
        assert characterization.hausdorff_gap <= 2.0 * math.sqrt(engine.sublevel_tolerance)
        for t in characterization.result.t_tilde_Mm:
            assert t == pytest.approx(T_STAR, abs=1e-6)
        assert characterization.s_lambda == pytest.approx(T_STAR, abs=1e-8)


class TestProjectionSolvers:
    """Tests for the solvers on random inputs."""

    def test_minmax_matches_distance(self, golden_axis, rng: np.random.Generator, engine: ProjectionEngine) -> None:
        """Test the minimum distance against the closed-form distance to the line."""
        for _ in range(50):
            sigma, _ = sample_at_distance(golden_axis, float(rng.uniform(0, 4)), rng)

            result = engine.minmax_project(sigma, golden_axis)

            expected = distance_to_geodesic_array(golden_axis, np.array([sigma.x]), np.array([sigma.y]))[0]
            assert result.distance_to_L == pytest.approx(expected, abs=1e-9)

    def test_minmax_on_segment_clamps(self, vertical, engine: ProjectionEngine) -> None:
        """Test that a segment projects to its nearer end."""
        result = engine.minmax_project(SIGMA, vertical.restrict(1.0, 2.0))

        assert result.t_star == pytest.approx(1.0, abs=1e-8)
        assert result.t_mM[0] == 1.0

    @pytest.mark.parametrize("n_sigma", [40, pytest.param(500, marks=pytest.mark.slow)])
    def test_characterization_gap_has_no_trend(
        self, n_sigma: int, golden_axis, rng: np.random.Generator, engine: ProjectionEngine
    ) -> None:
        """Test the Hausdorff gap between T_mM and T_Mm is small and flat in d(sigma, L)."""
        distances, gaps = [], []
        for _ in range(n_sigma):
            sigma, _ = sample_at_distance(golden_axis, float(rng.uniform(0, 5)), rng)
            characterization = engine.characterize_projection(sigma, golden_axis)
            distances.append(characterization.result.distance_to_L)
            gaps.append(characterization.hausdorff_gap)

        fit = fit_line(distances, gaps, rng, resamples=200)

        assert max(gaps) <= 1e-3
        assert abs(fit.slope) <= 1e-3

    def test_ratio_estimates_distance(self, golden_axis, rng: np.random.Generator, engine: ProjectionEngine) -> None:
        """Test Q >= 1, with equality in the torus model."""
        for _ in range(20):
            sigma, _ = sample_at_distance(golden_axis, float(rng.uniform(0.1, 4)), rng)

            q, holds = engine.check_ratio_estimates_distance(sigma, golden_axis)

            assert holds
            assert q == pytest.approx(1.0, rel=1e-6)

    def test_projection_diameter(self, vertical, engine: ProjectionEngine) -> None:
        """Test the diameter of a union of projections."""
        results = [engine.minmax_project(TeichPoint(0.0, y), vertical) for y in (1.0, math.exp(2.0))]

        assert projection_diameter(results) == pytest.approx(1.0, abs=1e-3)


class TestConstantsScans:
    """Tests for the (D, c1) scan and the product bound."""

    def test_scan_distance_implies_intersection(self, golden_segment, golden_certificate, rng: np.random.Generator) -> None:
        """Test that every bin beyond D has minimum at least c1."""
        scan = scan_distance_implies_intersection(golden_segment, golden_certificate, 20_000, rng)

        assert scan.c1 > 0
        assert 0 <= scan.D <= golden_segment.length + 0.1
        assert all(minimum >= scan.c1 for lo, minimum, _ in scan.rows if lo >= scan.D)

    def test_scan_needs_certificate(self, golden_segment, rng: np.random.Generator) -> None:
        """Test that the scan refuses uncertified segments."""
        with pytest.raises(NotCertifiedError):
            scan_distance_implies_intersection(golden_segment, None, 10, rng)

    def test_product_bound(self, vertical) -> None:
        """Test R_s(f) R_s(g) <= 1 / c1 for well-separated vertices."""
        f, g = MeasuredFoliation(1.0, 1.0), MeasuredFoliation(math.exp(2.0), math.exp(-2.0))

        assert check_product_bound(vertical, f, g, TeichPoint(0.0, 1.0), D=1.0, c1=0.1)

    def test_product_bound_inapplicable(self, vertical) -> None:
        """Test that close vertices make the bound inapplicable."""
        f = MeasuredFoliation(1.0, 1.0)

        with pytest.raises(InapplicableCaseError):
            check_product_bound(vertical, f, f, TeichPoint(0.0, 1.0), D=1.0, c1=0.1)
