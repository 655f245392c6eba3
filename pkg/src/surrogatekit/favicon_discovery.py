"""The two favicon cascades: archive favicon and original-resource favicon.

Each cascade is strictly ordered; a step that errors advances to the
next, never aborts. A response only counts as a favicon when it answers
200 with an image media type (archives often soft-404 with HTML). The
external favicon service is an injected resolver (domain -> URI or
None) so offline runs never call out.
"""

from __future__ import annotations

from dataclasses import dataclass
from urllib.parse import urljoin, urlsplit

from .errors import SurrogateError
from .htmlmini import parse_html
from .memento_client import is_memento_response, negotiate_datetime

_LINK_REL_VALUES = {"icon", "shortcut", "shortcut icon"}


@dataclass(frozen=True)
class FaviconResult:
    uri: str | None
    source: str  # link_element | well_known_path | negotiated_memento |
    #              live_original | external_service | none

    @property
    def found(self):
        return self.uri is not None


NOT_FOUND = FaviconResult(uri=None, source="none")


def _favicon_links(root, base_uri):
    """hrefs of LINK elements whose rel is icon / shortcut / shortcut icon."""
    hrefs = []
    for node in root.find_all("link"):
        rel = " ".join((node.get("rel") or "").lower().split())
        if rel in _LINK_REL_VALUES and node.get("href"):
            hrefs.append(urljoin(base_uri, node.get("href").strip()))
    return hrefs


def _image_response(fetcher, uri):
    """Response if uri answers 200 with image content, else None."""
    try:
        response = fetcher.fetch(uri)
    except SurrogateError:
        return None
    if response.status == 200 and response.is_image():
        return response
    return None


def archive_home_uri(urim):
    parts = urlsplit(urim)
    return f"{parts.scheme}://{parts.netloc}/"


def discover_archive_favicon(home_uri, fetcher, fallback=None):
    """LINK on the home page, then /favicon.ico, then the external resolver."""
    try:
        home = fetcher.fetch(home_uri)
    except SurrogateError:
        home = None
    if home is not None and home.ok:
        root = parse_html(home.body, home.headers.get("content-type"))
        for href in _favicon_links(root, home.final_uri):
            if _image_response(fetcher, href) is not None:
                return FaviconResult(uri=href, source="link_element")
    well_known = urljoin(home_uri, "/favicon.ico")
    if _image_response(fetcher, well_known) is not None:
        return FaviconResult(uri=well_known, source="well_known_path")
    if fallback is not None:
        domain = urlsplit(home_uri).hostname or ""
        resolved = fallback(domain)
        if resolved:
            return FaviconResult(uri=resolved, source="external_service")
    return NOT_FOUND


def discover_original_favicon(record, fetcher, fallback=None, timegate_base=None):
    """Favicon of the memento's original site, as of the memento-datetime."""
    root = parse_html(record.content_augmented, record.augmented_content_type)
    for href in _favicon_links(root, record.urim):
        try:
            response = fetcher.fetch(href)
        except SurrogateError:
            response = None
        if (
            response is not None
            and response.status == 200
            and is_memento_response(response)
            and response.is_image()
        ):
            return FaviconResult(uri=href, source="link_element")
        if timegate_base:
            negotiated = _negotiated_favicon(href, record, fetcher, timegate_base)
            if negotiated:
                return FaviconResult(uri=negotiated, source="negotiated_memento")

    original_ico = urljoin(record.uri_r, "/favicon.ico")
    if timegate_base:
        negotiated = _negotiated_favicon(original_ico, record, fetcher, timegate_base)
        if negotiated:
            return FaviconResult(uri=negotiated, source="negotiated_memento")

    if _image_response(fetcher, original_ico) is not None:
        return FaviconResult(uri=original_ico, source="live_original")

    if fallback is not None:
        resolved = fallback(record.original_domain)
        if resolved:
            return FaviconResult(uri=resolved, source="external_service")
    return NOT_FOUND


def _negotiated_favicon(uri, record, fetcher, timegate_base):
    try:
        negotiated = negotiate_datetime(
            uri, record.memento_datetime, timegate_base, fetcher
        )
    except SurrogateError:
        return None
    if not negotiated:
        return None
    return negotiated if _image_response(fetcher, negotiated) is not None else None
