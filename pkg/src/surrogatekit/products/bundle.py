"""SurrogateBundle: every card-facing fact about one memento.

Assembly is tolerant by design: a missing favicon, TimeMap, or dead
original degrades to an absent field, never a failure. Only the facts
that came with the memento itself (URIs, datetime) are guaranteed.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime

from ..content_analysis import extract_description, extract_title
from ..domains import archive_name
from ..errors import SurrogateError
from ..favicon_discovery import (
    archive_home_uri,
    discover_archive_favicon,
    discover_original_favicon,
)
from ..image_selection import select_best_image
from ..memento_client import MementoRecord, build_timetravel_uri, parse_timemap
from ..profiles import first_matching


@dataclass(frozen=True)
class SurrogateBundle:
    urim: str
    uri_r: str
    memento_datetime: datetime
    title: str
    snippet: str
    best_image_uri: str | None
    archive_name: str
    archive_uri: str
    archive_favicon: str | None
    original_favicon: str | None
    original_domain: str
    original_linkstatus: str  # "Live" | "Rotten"
    timetravel_uri: str
    timemap: object = None  # TimeMapStats or None
    collection_id: str | None = None
    collection_name: str | None = None
    collection_uri: str | None = None


def original_link_status(uri_r, fetcher):
    """'Live' only when the original answers 200 right now."""
    try:
        response = fetcher.fetch(uri_r)
    except SurrogateError:
        return "Rotten"
    return "Live" if response.status == 200 else "Rotten"


def fetch_timemap_stats(record, fetcher):
    if not record.timemap_uri:
        return None
    try:
        response = fetcher.fetch(record.timemap_uri)
        if not response.ok:
            return None
        return parse_timemap(response.body)
    except SurrogateError:
        return None


def build_surrogate_bundle(record: MementoRecord, ctx, candidates=None):
    """Gather all card facts for one resolved memento."""
    raw_content, raw_type = record.best_content()
    title = extract_title(raw_content, raw_type)
    snippet = extract_description(raw_content, raw_type)
    best_image = select_best_image(
        record,
        ctx.fetcher,
        weights=ctx.weights,
        timegate_base=ctx.timegate_base,
        default_image_uri=ctx.default_image_uri,
        candidates=candidates,
    )
    archive_fav = discover_archive_favicon(
        archive_home_uri(record.urim), ctx.fetcher, ctx.favicon_resolver
    )
    original_fav = discover_original_favicon(
        record, ctx.fetcher, ctx.favicon_resolver, ctx.timegate_base
    )
    profile = first_matching(record.urim, ctx.profiles)
    collection_id = profile.collection_id(record.urim) if profile else None
    return SurrogateBundle(
        urim=record.urim,
        uri_r=record.uri_r,
        memento_datetime=record.memento_datetime,
        title=title,
        snippet=snippet,
        best_image_uri=best_image,
        archive_name=archive_name(record.urim),
        archive_uri=archive_home_uri(record.urim),
        archive_favicon=archive_fav.uri,
        original_favicon=original_fav.uri,
        original_domain=record.original_domain,
        original_linkstatus=original_link_status(record.uri_r, ctx.fetcher),
        timetravel_uri=build_timetravel_uri(
            record.uri_r, record.memento_datetime, ctx.aggregator_base
        ),
        timemap=fetch_timemap_stats(record, ctx.fetcher),
        collection_id=collection_id,
    )
