"""Quasi-geodesic path generators."""

from teichproj.generators.horocyclic_detour import HorocyclicDetour
from teichproj.generators.jittered_hops import JitteredHops
from teichproj.generators.triangular_detour import TriangularDetour
from teichproj.interfaces.path_generator import PathGenerator

GENERATORS: dict[str, type[PathGenerator]] = {
    "triangular": TriangularDetour,
    "hops": JitteredHops,
}


def get_generator(name: str) -> PathGenerator:
    """Return a stability-path generator with default parameters by name."""
    try:
        return GENERATORS[name]()
    except KeyError:
        raise ValueError(f"unknown path generator '{name}'; valid: {', '.join(GENERATORS)}") from None


__all__ = ["GENERATORS", "HorocyclicDetour", "JitteredHops", "TriangularDetour", "get_generator"]
