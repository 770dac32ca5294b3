"""Tests for the exact torus model."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from teichproj.errors import DegenerateInputError, NotPseudoAnosovError
from teichproj.experiments.sampling import point_at_distance
from teichproj.models.foliation import MeasuredFoliation
from teichproj.models.point import MappingClass, TeichPoint
from teichproj.services.torus_model import (
    apply_mapping_class,
    apply_mapping_class_f,
    axis_of,
    boundary_points,
    dilatation,
    distance_to_geodesic_array,
    extremal_length,
    fixed_points,
    geodesic_between,
    geodesic_from_qd,
    maximizing_class,
    teich_distance,
    teich_distance_array,
    unit_direction,
)

coords = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)
heights = st.floats(min_value=0.1, max_value=5.0, allow_nan=False)
points = st.builds(TeichPoint, x=coords, y=heights)
foliations = st.builds(
    MeasuredFoliation.from_angle,
    st.floats(min_value=0.0, max_value=2 * math.pi),
    st.floats(min_value=0.01, max_value=5.0),
)


def random_geodesic(rng: np.random.Generator):
    base = TeichPoint(float(rng.uniform(-2, 2)), float(rng.uniform(0.2, 3.0)))
    return geodesic_from_qd(base, unit_direction(base, float(rng.uniform(0, math.pi))), (-math.inf, math.inf))


class TestExtremalLength:
    """Tests for extremal length at a point."""

    def test_square_torus_basis(self) -> None:
        """Test E_i((1, 0)) = E_i((0, 1)) = 1."""
        square = TeichPoint(0.0, 1.0)

        assert extremal_length(square, MeasuredFoliation(1.0, 0.0)) == 1.0
        assert extremal_length(square, MeasuredFoliation(0.0, 1.0)) == 1.0
        assert extremal_length(square, MeasuredFoliation(1.0, 1.0)) == 2.0

    @given(points, foliations, st.floats(min_value=0.1, max_value=10.0))
    def test_quadratic_in_measure(self, p: TeichPoint, f: MeasuredFoliation, s: float) -> None:
        """Test E(s f) = s^2 E(f)."""
        assert extremal_length(p, f.scaled(s)) == pytest.approx(s * s * extremal_length(p, f), rel=1e-12)

    @given(points, foliations)
    def test_invariant_under_mapping_classes(self, p: TeichPoint, f: MeasuredFoliation) -> None:
        """Test E_{m p}(m f) = E_p(f)."""
        m = MappingClass(2, 1, 1, 1)

        moved = extremal_length(apply_mapping_class(m, p), apply_mapping_class_f(m, f))

        assert moved == pytest.approx(extremal_length(p, f), rel=1e-9)


class TestDistance:
    """Tests for the Teichmüller distance."""

    def test_vertical_distance(self) -> None:
        """Test d(i, i e^{2t}) = t."""
        assert teich_distance(TeichPoint(0.0, 1.0), TeichPoint(0.0, math.exp(2.0))) == pytest.approx(1.0)

    def test_zero_distance(self) -> None:
        """Test d(p, p) = 0 and K(p, p) = 1."""
        p = TeichPoint(0.3, 0.7)

        assert teich_distance(p, p) == 0.0
        assert dilatation(p, p) == 1.0

    @given(points, points)
    def test_symmetric_and_matches_dilatation(self, p: TeichPoint, q: TeichPoint) -> None:
        """Test symmetry and d = log(K) / 2."""
        d = teich_distance(p, q)

        assert d == pytest.approx(teich_distance(q, p), rel=1e-12, abs=1e-15)
        assert d == pytest.approx(0.5 * math.log(dilatation(p, q)), rel=1e-9, abs=1e-12)

    @given(points, points, points)
    def test_triangle_inequality(self, p: TeichPoint, q: TeichPoint, r: TeichPoint) -> None:
        """Test d(p, r) <= d(p, q) + d(q, r)."""
        assert teich_distance(p, r) <= teich_distance(p, q) + teich_distance(q, r) + 1e-9

    @given(points, points)
    @settings(max_examples=50)
    def test_maximizing_class_realizes_dilatation(self, p: TeichPoint, q: TeichPoint) -> None:
        """Test E_q / E_p at the witness equals K(p, q)."""
        f = maximizing_class(p, q).to_foliation()

        ratio = extremal_length(q, f) / extremal_length(p, f)

        assert ratio == pytest.approx(dilatation(p, q), rel=1e-8)

    def test_array_matches_scalar(self, rng: np.random.Generator) -> None:
        """Test the vectorized distance against the scalar one."""
        x1, x2 = rng.uniform(-2, 2, 50), rng.uniform(-2, 2, 50)
        y1, y2 = rng.uniform(0.1, 3, 50), rng.uniform(0.1, 3, 50)

        values = teich_distance_array(x1, y1, x2, y2)

        for k in range(50):
            expected = teich_distance(TeichPoint(x1[k], y1[k]), TeichPoint(x2[k], y2[k]))
            assert values[k] == pytest.approx(expected, rel=1e-12)


class TestGeodesics:
    """Tests for geodesic construction."""

    def test_geodesic_laws(self, rng: np.random.Generator) -> None:
        """Test E_{L(t)}(Phi_h) e^{2t} = E_{L(0)}(Phi_h) and unit speed on random geodesics."""
        for _ in range(1000):
            L = random_geodesic(rng)
            s, t = rng.uniform(-5, 5, 2)
            start = extremal_length(L.point(0.0), L.qd.phi_h)

            assert extremal_length(L.point(t), L.qd.phi_h) * math.exp(2 * t) == pytest.approx(start, rel=1e-10)
            assert extremal_length(L.point(t), L.qd.phi_v) * math.exp(-2 * t) == pytest.approx(1.0, rel=1e-10)
            assert teich_distance(L.point(s), L.point(t)) == pytest.approx(abs(s - t), rel=1e-10, abs=1e-10)

    def test_geodesic_from_qd_normalization(self, rng: np.random.Generator) -> None:
        """Test E_base(Phi_h) = E_base(Phi_v) = i(Phi_h, Phi_v) = 1 and L(0) = base."""
        L = random_geodesic(rng)
        h, v = L.qd.phi_h, L.qd.phi_v

        assert extremal_length(L.base, h) == pytest.approx(1.0)
        assert extremal_length(L.base, v) == pytest.approx(1.0)
        assert abs(h.a * v.b - h.b * v.a) == pytest.approx(1.0)
        assert L.point(0.0).x == pytest.approx(L.base.x)
        assert L.point(0.0).y == pytest.approx(L.base.y)

    def test_horizontal_direction_is_shrunk(self) -> None:
        """Test that Phi_h is a positive multiple of the requested direction."""
        base = TeichPoint(0.5, 2.0)
        direction = MeasuredFoliation(1.0, 1.0)

        h = geodesic_from_qd(base, direction, (0.0, 1.0)).qd.phi_h

        assert h.a * direction.b - h.b * direction.a == pytest.approx(0.0, abs=1e-12)
        assert h.a * direction.a + h.b * direction.b > 0

    @given(points, points)
    @settings(max_examples=50)
    def test_geodesic_between_reaches_endpoint(self, p: TeichPoint, q: TeichPoint) -> None:
        """Test L(0) = p and L(d(p, q)) = q."""
        d = teich_distance(p, q)
        if d < 1e-6:
            return
        L = geodesic_between(p, q)
        end = L.point(L.interval[1])

        assert L.interval[0] == 0.0
        assert L.interval[1] == pytest.approx(d)
        assert teich_distance(end, q) < 1e-7

    def test_geodesic_between_coincident_points(self) -> None:
        """Test that p = q is degenerate."""
        p = TeichPoint(0.0, 1.0)

        with pytest.raises(DegenerateInputError):
            geodesic_between(p, p)

    def test_vertical_boundary_points(self, vertical) -> None:
        """Test that the vertical geodesic runs from 0 to infinity."""
        assert boundary_points(vertical) == (0.0, math.inf)

    def test_distance_to_geodesic(self, vertical, rng: np.random.Generator) -> None:
        """Test the perpendicular distance from shot points."""
        for distance in (0.0, 0.5, 2.0):
            for t in rng.uniform(-2, 2, 5):
                point = point_at_distance(vertical, float(t), 1.0, distance)

                measured = distance_to_geodesic_array(vertical, np.array([point.x]), np.array([point.y]))

                assert measured[0] == pytest.approx(distance, abs=1e-9)


class TestMappingClassAction:
    """Tests for the action of SL(2, Z)."""

    def test_golden_fixed_points(self, golden_mapping: MappingClass) -> None:
        """Test the fixed points (1 -+ sqrt 5) / 2."""
        r1, r2 = fixed_points(golden_mapping)

        assert r1 == pytest.approx((1 - math.sqrt(5)) / 2)
        assert r2 == pytest.approx((1 + math.sqrt(5)) / 2)

    def test_golden_translation_length(self, golden_mapping: MappingClass) -> None:
        """Test t0 = log((3 + sqrt 5) / 2) and that m translates the axis by t0."""
        axis, t0 = axis_of(golden_mapping)

        assert t0 == pytest.approx(math.log((3 + math.sqrt(5)) / 2), rel=1e-12)
        for t in (-1.0, 0.0, 0.7):
            moved = apply_mapping_class(golden_mapping, axis.point(t))
            assert teich_distance(moved, axis.point(t + t0)) < 1e-9

    @pytest.mark.parametrize("matrix", [(1, 1, 0, 1), (0, -1, 1, 0), (1, 0, 0, 1), (-1, 1, -1, 0)])
    def test_not_pseudo_anosov(self, matrix: tuple[int, int, int, int]) -> None:
        """Test that |trace| <= 2 has no axis."""
        with pytest.raises(NotPseudoAnosovError):
            axis_of(MappingClass(*matrix))
