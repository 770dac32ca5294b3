"""Infrastructure package."""

from teichproj.infra.store import ArtifactStore, format_value

__all__ = ["ArtifactStore", "format_value"]
