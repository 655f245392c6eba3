"""Self-contained simulated web archive for tests and demos."""

from .manifest import BANNER_MARKER, FixtureManifest, ManifestError
from .server import MockArchiveServer

__all__ = ["BANNER_MARKER", "FixtureManifest", "ManifestError", "MockArchiveServer"]
