"""Variable-to-endpoint bindings and the memoizing API client.

Each template variable maps to one service endpoint and a field of its
JSON body (or to the story input itself). The client memoizes by
(endpoint, URI-M, preferences) so a story render calls each endpoint at
most once per memento regardless of how many variables share it.
"""

from __future__ import annotations

import base64
from dataclasses import dataclass

import requests

from ..memento_client import format_dt14


class ApiError(Exception):
    """A service endpoint answered with a non-200 status."""

    def __init__(self, status, message, endpoint=None):
        super().__init__(f"{endpoint or 'endpoint'} answered {status}: {message}")
        self.status = status
        self.endpoint = endpoint


@dataclass(frozen=True)
class MediaValue:
    content_type: str
    data: bytes
    origin: str  # endpoint or URI the bytes came from

    def to_data_uri(self):
        return f"data:{self.content_type};base64,{base64.b64encode(self.data).decode('ascii')}"


@dataclass(frozen=True)
class VariableBinding:
    name: str  # the element.surrogate.<name> (or element.<name>) suffix
    endpoint: str | None  # service path, or None for input-derived values
    json_field: str | None = None
    prefer_allowed: tuple = ()
    media: bool = False  # value is bytes (thumbnail, imagereel)
    ranked: str | None = None  # "image" | "sentence": rank=i prefer selects an entry


CONTENTDATA = "/services/memento/contentdata/"
BESTIMAGE = "/services/memento/bestimage/"
IMAGEDATA = "/services/memento/imagedata/"
ARCHIVEDATA = "/services/memento/archivedata/"
ORIGINALDATA = "/services/memento/originalresourcedata/"
SEEDDATA = "/services/memento/seeddata/"
SENTENCERANK = "/services/memento/sentencerank/"
THUMBNAIL = "/services/product/thumbnail/"
IMAGEREEL = "/services/product/imagereel/"

_THUMBNAIL_PREFS = (
    "viewport_width", "viewport_height", "thumbnail_width",
    "thumbnail_height", "timeout", "remove_banner",
)
_IMAGEREEL_PREFS = ("duration", "imagecount", "width", "height")

BINDINGS = {
    binding.name: binding
    for binding in (
        VariableBinding("archive_collection_id", ARCHIVEDATA, "archive-collection-id"),
        VariableBinding("archive_collection_name", ARCHIVEDATA, "archive-collection-name"),
        VariableBinding("archive_collection_uri", ARCHIVEDATA, "archive-collection-uri"),
        VariableBinding("archive_favicon", ARCHIVEDATA, "archive-favicon"),
        VariableBinding("archive_name", ARCHIVEDATA, "archive-name"),
        VariableBinding("archive_uri", ARCHIVEDATA, "archive-uri"),
        VariableBinding("best_image_uri", BESTIMAGE, "best-image-uri"),
        VariableBinding("first_memento_datetime", SEEDDATA, "first-memento-datetime"),
        VariableBinding("first_urim", SEEDDATA, "first-urim"),
        VariableBinding("image", IMAGEDATA, "ranked images", ranked="image"),
        VariableBinding("imagereel", IMAGEREEL, None, prefer_allowed=_IMAGEREEL_PREFS, media=True),
        VariableBinding("last_memento_datetime", SEEDDATA, "last-memento-datetime"),
        VariableBinding("last_urim", SEEDDATA, "last-urim"),
        VariableBinding("memento_count", SEEDDATA, "memento-count"),
        VariableBinding("memento_datetime", CONTENTDATA, "memento-datetime"),
        VariableBinding("memento_datetime_14num", CONTENTDATA, "memento-datetime"),
        VariableBinding("metadata", SEEDDATA, "metadata"),
        VariableBinding("original_domain", ORIGINALDATA, "original-domain"),
        VariableBinding("original_favicon", ORIGINALDATA, "original-favicon"),
        VariableBinding("original_linkstatus", ORIGINALDATA, "original-linkstatus"),
        VariableBinding("original_uri", ORIGINALDATA, "original-uri"),
        VariableBinding("sentence", SENTENCERANK, "scored sentences", ranked="sentence"),
        VariableBinding("snippet", CONTENTDATA, "snippet"),
        VariableBinding("thumbnail", THUMBNAIL, None, prefer_allowed=_THUMBNAIL_PREFS, media=True),
        VariableBinding("timegate_uri", SEEDDATA, "timegate"),
        VariableBinding("timemap_uri", SEEDDATA, "timemap"),
        VariableBinding("title", CONTENTDATA, "title"),
        VariableBinding("urim", None),
    )
}

SURROGATE_FIELDS = frozenset(BINDINGS)


class ApiClient:
    """Talks to the surrogate service; memoizes per (endpoint, urim, prefer)."""

    def __init__(self, base_url, timeout=120, session=None):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self.session = session or requests.Session()
        self._memo = {}
        self.call_count = 0

    def _request(self, endpoint, urim, prefer_header):
        key = (endpoint, urim, prefer_header)
        if key in self._memo:
            return self._memo[key]
        headers = {"Prefer": prefer_header} if prefer_header else {}
        self.call_count += 1
        response = self.session.get(
            self.base_url + endpoint + urim, headers=headers, timeout=self.timeout
        )
        if response.status_code != 200:
            message = response.text[:300]
            raise ApiError(response.status_code, message, endpoint=endpoint)
        if response.headers.get("Content-Type", "").startswith("application/json"):
            result = response.json()
        else:
            result = MediaValue(
                content_type=response.headers.get("Content-Type", "application/octet-stream"),
                data=response.content,
                origin=endpoint + urim,
            )
        self._memo[key] = result
        return result

    def endpoint_json(self, endpoint, urim, prefer_header=None):
        return self._request(endpoint, urim, prefer_header)

    def product_media(self, endpoint, urim, prefer_header=None):
        return self._request(endpoint, urim, prefer_header)

    def fetch_external(self, uri):
        """Raw bytes of an archived resource (media attachments)."""
        key = ("external", uri, None)
        if key in self._memo:
            return self._memo[key]
        self.call_count += 1
        response = self.session.get(uri, timeout=self.timeout)
        if response.status_code != 200:
            raise ApiError(response.status_code, f"cannot fetch media {uri}")
        value = MediaValue(
            content_type=response.headers.get("Content-Type", "application/octet-stream"),
            data=response.content,
            origin=uri,
        )
        self._memo[key] = value
        return value


def _prefer_header(binding, prefer):
    """Build the Prefer header from template filter args the binding allows."""
    allowed = [(k, v) for k, v in prefer if k in binding.prefer_allowed]
    return ",".join(f"{k}={v}" for k, v in allowed) or None


def _rank_from_prefer(prefer):
    for name, value in prefer:
        if name == "rank":
            rank = int(value)
            if rank < 1:
                raise ValueError(f"rank must be >= 1, got {rank}")
            return rank
    return 1


def resolve_variable(path, element, api, prefer=()):
    """Resolve element.surrogate.<name> / element.thumbnail for one element.

    Returns a string, or a MediaValue for media-producing variables.
    """
    name = path.rsplit(".", 1)[-1]
    binding = BINDINGS.get(name)
    if binding is None:
        raise KeyError(f"no binding for template variable {path!r}")
    urim = element.value
    if binding.endpoint is None:  # input-derived
        return urim
    if binding.media:
        return api.product_media(binding.endpoint, urim, _prefer_header(binding, prefer))
    body = api.endpoint_json(binding.endpoint, urim)
    if binding.ranked == "image":
        ranked = body.get(binding.json_field) or []
        rank = _rank_from_prefer(prefer)
        if rank > len(ranked):
            raise ApiError(500, f"image rank {rank} of {len(ranked)} unavailable", IMAGEDATA)
        return ranked[rank - 1]
    if binding.ranked == "sentence":
        sentences = body.get(binding.json_field) or []
        rank = _rank_from_prefer(prefer)
        for sentence in sentences:
            if sentence.get("rank") == rank:
                return sentence.get("text", "")
        raise ApiError(500, f"sentence rank {rank} unavailable", SENTENCERANK)
    value = body.get(binding.json_field)
    if name == "memento_datetime_14num" and value:
        from datetime import datetime, timezone

        parsed = datetime.strptime(value, "%Y-%m-%dT%H:%M:%SZ").replace(tzinfo=timezone.utc)
        return format_dt14(parsed)
    if name == "metadata" and isinstance(value, dict):
        import json

        return json.dumps(value, sort_keys=True)
    if value is None:
        return ""
    return str(value)
