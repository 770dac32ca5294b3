"""Domain models package."""

from teichproj.models.certificate import ThicknessCertificate
from teichproj.models.foliation import MeasuredFoliation, ProjectiveClass, SlopeCurve
from teichproj.models.geodesic import QuadraticDifferentialData, TeichGeodesic
from teichproj.models.path import QuasiGeodesicPath, ThinRegion
from teichproj.models.point import MappingClass, TeichPoint
from teichproj.models.projection import ProjectionCharacterization, ProjectionResult

__all__ = [
    "MappingClass",
    "MeasuredFoliation",
    "ProjectionCharacterization",
    "ProjectionResult",
    "ProjectiveClass",
    "QuadraticDifferentialData",
    "QuasiGeodesicPath",
    "SlopeCurve",
    "TeichGeodesic",
    "TeichPoint",
    "ThicknessCertificate",
    "ThinRegion",
]
