"""HTTP API exposing memento information and surrogate products."""

from .config import ServiceConfig
from .preferences import PreferenceSet, format_applied, parse_prefer
from .service import SurrogateService

__all__ = [
    "ServiceConfig",
    "PreferenceSet",
    "parse_prefer",
    "format_applied",
    "SurrogateService",
]
