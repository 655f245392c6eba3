"""Shared wiring for product builds."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..image_selection import ScoringWeights
from ..profiles import DEFAULT_PROFILES

DEFAULT_AGGREGATOR_BASE = "http://timetravel.mementoweb.org"


@dataclass
class ProductContext:
    """Everything a product build needs beyond the memento itself.

    The fetcher is the only thing that talks to the network; the rest is
    configuration. A context is immutable in spirit and safe to share
    across concurrent request handlers.
    """

    fetcher: object
    profiles: tuple = tuple(DEFAULT_PROFILES)
    weights: ScoringWeights = field(default_factory=ScoringWeights)
    timegate_base: str | None = None
    aggregator_base: str = DEFAULT_AGGREGATOR_BASE
    default_image_uri: str | None = None
    favicon_resolver: object = None  # callable: domain -> URI or None
    service_base: str | None = None  # where card JS and static assets live
    renderer: object = None  # screenshot backend for thumbnails
