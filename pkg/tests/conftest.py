"""Pytest configuration and fixtures."""

from collections.abc import Iterator
from pathlib import Path

import numpy as np
import pytest

from teichproj.config import get_settings
from teichproj.models.certificate import ThicknessCertificate
from teichproj.models.geodesic import TeichGeodesic
from teichproj.models.point import MappingClass
from teichproj.schemas.constants import CONSTANT_NAMES, EmpiricalConstants, MeasuredConstant
from teichproj.services.foliation_calculus import certify_precompact
from teichproj.services.torus_model import axis_of, vertical_geodesic

GOLDEN = MappingClass(2, 1, 1, 1)


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> Iterator[None]:
    """Point the output directory at a temporary path and reset cached settings."""
    monkeypatch.setenv("TEICHPROJ_OUTPUT_DIR", str(tmp_path / "out"))
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for randomized checks."""
    return np.random.default_rng(20240611)


@pytest.fixture
def vertical() -> TeichGeodesic:
    """The geodesic t -> i e^{2t}, whose ends are cusps."""
    return vertical_geodesic()


@pytest.fixture
def golden_mapping() -> MappingClass:
    """The pseudo-Anosov class [[2, 1], [1, 1]]."""
    return GOLDEN


@pytest.fixture
def golden_axis() -> TeichGeodesic:
    """The axis of [[2, 1], [1, 1]], a thick geodesic."""
    axis, _ = axis_of(GOLDEN)
    return axis


@pytest.fixture
def golden_segment(golden_axis: TeichGeodesic) -> TeichGeodesic:
    """The axis restricted to [-1, 1]."""
    return golden_axis.restrict(-1.0, 1.0)


@pytest.fixture
def golden_certificate(golden_segment: TeichGeodesic) -> ThicknessCertificate:
    """Thickness certificate of the golden segment."""
    return certify_precompact(golden_segment, 0.05)


@pytest.fixture
def measured_constants() -> EmpiricalConstants:
    """A plausible constant set for the golden axis, built without measuring."""
    values = {
        "epsilon": 0.4, "c0": 2.0, "c1": 0.1, "D": 1.0, "c3": 2.0, "c4": 0.5, "c5": 0.5,
        "r0": 0.5, "ell0": 1.5, "b0": 0.1, "C": 1.0, "b1": 1.0, "b2": 2.0, "B": 1.5,
    }
    return EmpiricalConstants(
        seed=0,
        config={},
        b1_exceeds_half_C=True,
        **{
            name: MeasuredConstant(value=values[name], experiment_id="constants", sample_size=10)
            for name in CONSTANT_NAMES
        },
    )
