"""Interfaces package."""

from teichproj.interfaces.path_generator import PathGenerator

__all__ = ["PathGenerator"]
