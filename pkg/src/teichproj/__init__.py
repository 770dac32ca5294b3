"""
Teich Projections

Exact torus-model Teichmüller geometry, coarse projections to geodesics,
and the experiments that measure their constants.
"""

from teichproj.version import __version__

__all__ = ["__version__"]
