"""Tests for the experiment layer: paths, generators, experiments and artifacts."""

import math

import numpy as np
import pytest

from teichproj.errors import ConstantsMissingError, EndpointClassError, QuasiGeodesicViolation
from teichproj.experiments.constants import constants_report, measure_constants
from teichproj.experiments.contraction import contraction_experiment, path_contraction_check
from teichproj.experiments.paths import (
    GeodesicPiece,
    HorocyclePiece,
    make_path,
    path_coordinates,
    required_additive_constant,
    sample_pieces,
)
from teichproj.experiments.runner import fan_out
from teichproj.experiments.sampling import sample_at_distance, sample_sphere, sample_thin, sampling_window
from teichproj.experiments.sharpness import cusp_frame, sharpness_demo
from teichproj.experiments.stability import neighborhood_bound, stability_experiment
from teichproj.experiments.stats import fit_line, lower_envelope
from teichproj.experiments.thin import thin_intersection_diameter, thin_projection_experiment
from teichproj.experiments.translation import pa_translation_experiment, predicted_displacement
from teichproj.generators import HorocyclicDetour, JitteredHops, TriangularDetour, get_generator
from teichproj.infra.store import ArtifactStore, format_value
from teichproj.interfaces.path_generator import MAX_ATTEMPTS
from teichproj.models.foliation import MeasuredFoliation, SlopeCurve
from teichproj.models.path import ThinRegion
from teichproj.models.point import TeichPoint
from teichproj.schemas.config import SampleCounts
from teichproj.services.projection_engine import ProjectionEngine
from teichproj.services.torus_model import distance_to_geodesic_array, extremal_length, teich_distance


class TestPaths:
    """Tests for path pieces and quasi-geodesic validation."""

    def test_piece_lengths(self) -> None:
        """Test geodesic and horocycle lengths in Teichmüller units."""
        assert GeodesicPiece(1j, complex(0.0, math.exp(2.0))).length == pytest.approx(1.0)
        assert HorocyclePiece(0.0, 4.0, 2.0).length == pytest.approx(1.0)

    def test_geodesic_is_a_one_zero_quasi_geodesic(self) -> None:
        """Test that a single geodesic piece validates with K = 1, delta = 0."""
        path = make_path([GeodesicPiece(complex(0.2, 1.0), complex(-1.0, 3.0))], K=1.0, delta=0.0, samples=50)
        s, _, _ = path_coordinates(path)

        assert path.length == pytest.approx(teich_distance(TeichPoint(0.2, 1.0), TeichPoint(-1.0, 3.0)))
        assert np.all(np.diff(s) >= 0)

    def test_long_horocycle_is_rejected(self) -> None:
        """Test that a long horizontal leg breaks a tight inequality."""
        with pytest.raises(QuasiGeodesicViolation) as exc_info:
            make_path([HorocyclePiece(0.0, 10.0, 1.0)], K=1.0, delta=0.1)

        assert exc_info.value.code == "QUASI_GEODESIC_VIOLATION"

    def test_required_additive_constant(self) -> None:
        """Test the least delta for a horocycle: its length minus the distance of its ends."""
        sampled = sample_pieces([HorocyclePiece(0.0, 10.0, 1.0)], 200)

        delta = required_additive_constant(sampled.s, sampled.z.real, sampled.z.imag, 1.0)

        ends = teich_distance(TeichPoint(0.0, 1.0), TeichPoint(10.0, 1.0))
        assert delta == pytest.approx(5.0 - ends, rel=1e-9)
        make_path([HorocyclePiece(0.0, 10.0, 1.0)], K=1.0, delta=delta)


class TestGenerators:
    """Tests for path generators."""

    def test_get_generator(self) -> None:
        """Test lookup by name."""
        assert get_generator("triangular").name == "triangular"
        assert get_generator("hops").name == "hops"
        with pytest.raises(ValueError):
            get_generator("spiral")

    def test_fallback_is_the_geodesic(self, golden_axis, rng: np.random.Generator) -> None:
        """Test that proposals after MAX_ATTEMPTS rejections run along L."""
        for generator in (TriangularDetour(), JitteredHops()):
            pieces = generator.pieces(golden_axis, -1.0, 2.0, rng, MAX_ATTEMPTS)

            assert sum(piece.length for piece in pieces) == pytest.approx(3.0, rel=1e-9)

    def test_proposals_connect_the_ends(self, vertical, rng: np.random.Generator) -> None:
        """Test that every proposal runs from L(a) to L(b) in the frame."""
        for generator in (TriangularDetour(), JitteredHops(), HorocyclicDetour(side=-1.0)):
            pieces = generator.pieces(vertical, 0.0, 2.0, rng, 0)

            assert pieces[0].point(0.0) == pytest.approx(1j)
            assert pieces[-1].point(pieces[-1].length) == pytest.approx(complex(0.0, math.exp(4.0)))

    def test_horocyclic_detour_legs(self, vertical, rng: np.random.Generator) -> None:
        """Test the lower leg has length (b - a) / 2 and the side sets the name."""
        detour = HorocyclicDetour(side=1.0)

        pieces = detour.pieces(vertical, 1.0, 3.0, rng, 0)

        assert pieces[0].length == pytest.approx(1.0)
        assert detour.name == "horocyclic+"


class TestSampling:
    """Tests for random points around a geodesic."""

    def test_sampling_window(self, vertical, golden_segment) -> None:
        """Test infinite geodesics are cut to the window and segments are kept."""
        assert sampling_window(vertical) == (-3.0, 3.0)
        assert sampling_window(golden_segment, (-5.0, 5.0)) == (-1.0, 1.0)

    def test_points_at_distance_are_perpendicular(self, vertical, rng: np.random.Generator) -> None:
        """Test the distance to L is exact and the foot parameter is the nearest point."""
        engine = ProjectionEngine()
        sides = set()
        for _ in range(20):
            sigma, t = sample_at_distance(vertical, 1.5, rng)

            distance = distance_to_geodesic_array(vertical, np.array([sigma.x]), np.array([sigma.y]))[0]
            assert distance == pytest.approx(1.5, abs=1e-9)
            assert engine.minmax_project(sigma, vertical).t_star == pytest.approx(t, abs=1e-6)
            sides.add(sigma.x > 0)

        assert sides == {True, False}

    def test_sphere_radius(self, rng: np.random.Generator) -> None:
        """Test sphere points sit at the requested distance."""
        center = TeichPoint(0.3, 1.5)

        for point in sample_sphere(center, 1.2, 20, rng):
            assert teich_distance(center, point) == pytest.approx(1.2, rel=1e-9)

    def test_thin_samples_are_thin(self, golden_axis, rng: np.random.Generator) -> None:
        """Test sampled points lie in the thin region."""
        alpha = MeasuredFoliation(0.0, 1.0)
        region = ThinRegion(alpha=alpha, delta=0.05)

        points = sample_thin(golden_axis, alpha, 0.05, 30, rng)

        assert all(region.contains(point) for point in points)

    def test_thin_samples_reject_endpoint_classes(self, vertical, rng: np.random.Generator) -> None:
        """Test that an endpoint class has no finite vertex."""
        with pytest.raises(EndpointClassError):
            sample_thin(vertical, MeasuredFoliation(1.0, 0.0), 0.1, 1, rng)


class TestRunner:
    """Tests for deterministic fan-out."""

    def test_results_do_not_depend_on_workers(self) -> None:
        """Test identical results serially and on a pool."""

        def task(index: int, rng: np.random.Generator) -> tuple[int, float]:
            return index, float(rng.random())

        serial = fan_out(task, 16, seed=7, max_workers=1)
        pooled = fan_out(task, 16, seed=7, max_workers=4)

        assert serial == pooled
        assert [index for index, _ in serial] == list(range(16))

    def test_streams_differ(self) -> None:
        """Test that stages with different streams draw different numbers."""

        def task(index: int, rng: np.random.Generator) -> float:
            return float(rng.random())

        assert fan_out(task, 3, seed=7, max_workers=1, stream=0) != fan_out(task, 3, seed=7, max_workers=1, stream=1)


class TestStats:
    """Tests for line fits and envelopes."""

    def test_exact_line(self, rng: np.random.Generator) -> None:
        """Test that points on a line give that line and a tight interval."""
        x = [0.0, 1.0, 2.0, 3.0, 4.0]
        y = [2.0 * v - 1.0 for v in x]

        fit = fit_line(x, y, rng, resamples=200)

        assert fit.slope == pytest.approx(2.0)
        assert fit.intercept == pytest.approx(-1.0)
        assert fit.slope_ci[0] == pytest.approx(2.0)
        assert fit.slope_ci_excludes_zero

    def test_needs_two_distinct_x(self, rng: np.random.Generator) -> None:
        """Test the degenerate design is rejected."""
        with pytest.raises(ValueError):
            fit_line([1.0, 1.0], [0.0, 1.0], rng)

    def test_lower_envelope(self) -> None:
        """Test the per-x minimum."""
        keys, minima = lower_envelope([1.0, 1.0, 2.0], [3.0, 1.0, 5.0])

        assert keys.tolist() == [1.0, 2.0]
        assert minima.tolist() == [1.0, 5.0]


class TestConstants:
    """Tests for constant measurement and its report."""

    def test_measure_constants(self, golden_axis) -> None:
        """Test a small measurement on the golden axis."""
        samples = SampleCounts(sandwich=200, scan_pairs=500, sigma=6, boundary=3, centers=2)

        constants = measure_constants(golden_axis, samples, seed=3, config={}, window=(-1.0, 1.0), certify_step=0.1)

        values = constants.values()
        assert all(value > 0 for value in values.values())
        assert values["c0"] == pytest.approx(2.0, rel=1e-9)
        assert values["epsilon"] > 0.3
        assert constants.b1_exceeds_half_C
        assert constants_report(constants).passed

    def test_report_rows(self, measured_constants) -> None:
        """Test the report lists every constant."""
        report = constants_report(measured_constants)

        assert report.column("name")[0] == "epsilon"
        assert len(report.rows) == 14
        assert report.passed


class TestTranslation:
    """Tests for the pseudo-Anosov translation experiment."""

    def test_predicted_displacement_on_axis(self) -> None:
        """Test that points of the axis move by t0."""
        assert predicted_displacement(0.0, 0.9) == pytest.approx(0.9)

    def test_experiment_matches_prediction(self, golden_mapping) -> None:
        """Test every check passes and displacements match the closed form."""
        report = pa_translation_experiment(
            golden_mapping, [0.0, 0.5, 1.0], n_per_distance=5, seed=11, bootstrap=100, max_workers=1
        )

        assert report.passed
        assert len(report.rows) == 15
        for row in report.rows:
            assert row[4] == pytest.approx(row[5], rel=1e-6)
        assert report.fitted_value("t0") == pytest.approx(math.log((3 + math.sqrt(5)) / 2))
        assert report.fitted_value("c0") > 0

    def test_experiment_is_deterministic(self, golden_mapping) -> None:
        """Test identical seeds give identical rows, whatever the worker count."""
        first = pa_translation_experiment(golden_mapping, [0.0, 1.0], 4, seed=5, bootstrap=50, max_workers=1)
        second = pa_translation_experiment(golden_mapping, [0.0, 1.0], 4, seed=5, bootstrap=50, max_workers=3)

        assert first.rows == second.rows


class TestStability:
    """Tests for the stability experiment."""

    def test_neighborhood_bound(self, measured_constants) -> None:
        """Test (2K + 2) max(K b2, 2 b1) + delta."""
        assert neighborhood_bound(2.0, 0.5, measured_constants) == pytest.approx(6.0 * 4.0 + 0.5)

    def test_small_run(self, golden_axis, measured_constants) -> None:
        """Test deviations stay inside the bound for short and long segments."""
        report = stability_experiment(
            golden_axis,
            K=2.0,
            delta=0.5,
            n_paths=2,
            constants=measured_constants,
            seed=1,
            segment_lengths=[2.0, 4.0],
            path_samples=60,
            max_workers=1,
        )

        assert len(report.rows) == 4
        assert report.passed
        assert set(report.column("generator")) == {"triangular", "hops"}
        assert all(value >= 0 for value in report.column("deviation"))


class TestThin:
    """Tests for projections of thin regions."""

    def test_intersection_diameter(self, vertical) -> None:
        """Test acosh(delta / E0) with E0 = 2 for (1, 1) on the vertical geodesic."""
        alpha = MeasuredFoliation(1.0, 1.0)

        assert thin_intersection_diameter(vertical, alpha, 2.0 * math.cosh(1.0)) == pytest.approx(1.0)
        assert thin_intersection_diameter(vertical, alpha, 1.0) == 0.0

    def test_intersection_diameter_on_a_grid(self, vertical) -> None:
        """Test the closed form against E along a grid of L."""
        alpha = MeasuredFoliation(1.0, 1.0)
        grid = np.linspace(-2.0, 2.0, 40_001)

        inside = [t for t in grid if extremal_length(vertical.point(float(t)), alpha) <= 3.0]

        assert inside[-1] - inside[0] == pytest.approx(thin_intersection_diameter(vertical, alpha, 3.0), abs=2e-4)

    def test_endpoint_class_rejected(self, vertical, measured_constants) -> None:
        """Test that alpha = Phi_h has no thin projection experiment."""
        with pytest.raises(EndpointClassError):
            thin_projection_experiment(vertical, MeasuredFoliation(1.0, 0.0), measured_constants, 5, seed=0)

    def test_small_run(self, golden_axis, measured_constants) -> None:
        """Test samples land in Thin and rows cover both levels."""
        report = thin_projection_experiment(
            golden_axis, MeasuredFoliation(0.0, 1.0), measured_constants, n_samples=8, seed=2
        )

        assert len(report.rows) == 16
        assert all(check.passed for check in report.checks if check.name.startswith("samples inside"))
        assert report.fitted_value("delta0") > 0


class TestSharpness:
    """Tests for the cusp excursion demo."""

    def test_thick_axis_has_no_cusp_frame(self, golden_axis) -> None:
        """Test that the golden axis has no slope as an endpoint class."""
        with pytest.raises(EndpointClassError):
            cusp_frame(SlopeCurve(p=1, q=0), golden_axis)

    def test_deviation_grows(self) -> None:
        """Test deviation increases with T and tracks asinh(T) / 2."""
        T_values = [1.0, 2.0, 4.0]

        report = sharpness_demo(SlopeCurve(p=1, q=0), T_values, path_samples=80, bootstrap=50)

        assert report.passed
        for T, delta_T, deviation in zip(T_values, report.column("delta_T"), report.column("max_deviation")):
            assert delta_T == pytest.approx(math.exp(-2.0 * T), rel=1e-9)
            assert deviation <= 0.5 * math.asinh(T) + 1e-9
            assert deviation >= 0.5 * math.asinh(T) - 0.1

    def test_other_end(self, vertical) -> None:
        """Test that the backward endpoint class is reached through the flip."""
        report = sharpness_demo(SlopeCurve(p=0, q=1), [1.0], L=vertical, path_samples=40)

        assert len(report.rows) == 1


class TestContraction:
    """Tests for contraction at a distance."""

    def test_path_check_for_a_geodesic(self, golden_axis, measured_constants) -> None:
        """Test both bounds for a geodesic path far from the axis."""
        x, y = TeichPoint(-0.5, 40.0), TeichPoint(0.5, 40.0)
        path = make_path([GeodesicPiece(x.as_complex(), y.as_complex())], K=1.0, delta=0.0)

        passed, checks = path_contraction_check(golden_axis, x, y, path, measured_constants)

        assert passed
        assert [check.name for check in checks] == ["path bound", "quasi-Lipschitz bound"]

    def test_small_run(self, golden_axis, measured_constants) -> None:
        """Test rows, skipped distances and passing checks."""
        report = contraction_experiment(
            golden_axis,
            [0.5, 2.0, 3.0],
            measured_constants,
            n_boundary_samples=4,
            seed=4,
            n_paths=2,
            bootstrap=50,
            max_workers=1,
        )

        assert report.column("status")[0].startswith("skipped")
        assert report.column("status")[1:] == ["ok", "ok"]
        assert report.fitted_value("b2") > 0
        assert report.passed


class TestArtifactStore:
    """Tests for artifact persistence."""

    @pytest.mark.parametrize(
        "value, expected",
        [(math.nan, "nan"), (math.inf, "inf"), (-math.inf, "-inf"), (True, "true"), (0.1, "0.10000000000000001"), (3, "3")],
    )
    def test_format_value(self, value: object, expected: str) -> None:
        """Test locale-free cell text."""
        assert format_value(value) == expected

    def test_write_report(self, tmp_path, golden_mapping) -> None:
        """Test the three artifacts and the CSV provenance header."""
        store = ArtifactStore(tmp_path)
        report = pa_translation_experiment(golden_mapping, [0.0, 1.0], 2, seed=5, bootstrap=20, config={"k": 1})

        paths = store.write_report(report)

        lines = paths["csv"].read_text().splitlines()
        assert lines[0].startswith("# teichproj ")
        assert lines[1] == "# seed: 5"
        assert lines[2] == '# config: {"k":1}'
        assert lines[3].split(",") == report.columns
        assert len(lines) == 4 + len(report.rows)
        assert paths["json"].is_file()
        assert "pa-translation.csv" in paths["plot"].read_text()

    def test_missing_constants(self, tmp_path) -> None:
        """Test loading before measuring."""
        with pytest.raises(ConstantsMissingError):
            ArtifactStore(tmp_path).load_constants()

    def test_constants_persist(self, tmp_path, measured_constants) -> None:
        """Test saved constants load back unchanged."""
        store = ArtifactStore(tmp_path)

        store.save_constants(measured_constants)

        assert store.load_constants() == measured_constants
