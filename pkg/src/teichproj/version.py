"""Version information for teich-projections."""

__version__ = "1.0.0"
__constants_schema_version__ = "1"
