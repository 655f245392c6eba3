"""Memento Protocol client: detection, raw URIs, negotiation, TimeMaps.

Implements the protocol surface the surrogate pipeline needs: detect
whether a URI identifies a memento, derive its raw (unaugmented) form,
perform datetime negotiation against a TimeGate, parse link-format
TimeMaps, and build Time Travel aggregator links.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from email.utils import parsedate_to_datetime

from .domains import registered_domain
from .errors import MalformedTimeMap, NotAMemento
from .http_fetch import require_absolute
from .profiles import first_matching

HTTP_DT_FORMAT = "%a, %d %b %Y %H:%M:%S GMT"
_DT14 = re.compile(r"^\d{14}$")


def parse_http_datetime(value):
    """RFC 1123 header value -> aware UTC datetime (second precision)."""
    try:
        dt = datetime.strptime(value.strip(), HTTP_DT_FORMAT)
        return dt.replace(tzinfo=timezone.utc)
    except ValueError:
        dt = parsedate_to_datetime(value)
        if dt.tzinfo is None:
            dt = dt.replace(tzinfo=timezone.utc)
        return dt.astimezone(timezone.utc).replace(microsecond=0)


def format_http_datetime(dt):
    return dt.astimezone(timezone.utc).strftime(HTTP_DT_FORMAT)


def parse_dt14(value):
    """14-digit YYYYMMDDHHMMSS -> aware UTC datetime."""
    if not _DT14.match(value):
        raise ValueError(f"not a 14-digit datetime: {value!r}")
    return datetime.strptime(value, "%Y%m%d%H%M%S").replace(tzinfo=timezone.utc)


def format_dt14(dt):
    return dt.astimezone(timezone.utc).strftime("%Y%m%d%H%M%S")


def format_iso8601(dt):
    return dt.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass(frozen=True)
class MementoRecord:
    """Resolved identity and content of one memento."""

    urim: str
    uri_r: str
    memento_datetime: datetime
    archive_domain: str
    raw_urim: str | None = None
    banner_free_urim: str | None = None
    content_augmented: bytes = b""
    content_raw: bytes | None = None
    augmented_content_type: str | None = None
    raw_content_type: str | None = None
    timemap_uri: str | None = None
    timegate_uri: str | None = None

    @property
    def archive_uri(self):
        from urllib.parse import urlsplit

        parts = urlsplit(self.urim)
        return f"{parts.scheme}://{parts.netloc}/"

    @property
    def original_domain(self):
        from urllib.parse import urlsplit

        return urlsplit(self.uri_r).hostname or ""

    def best_content(self):
        """Raw content when we have it, augmented otherwise."""
        if self.content_raw is not None:
            return self.content_raw, self.raw_content_type
        return self.content_augmented, self.augmented_content_type


# --- link-value parsing (shared by Link headers and TimeMap bodies) ---

def parse_link_value(text):
    """Parse RFC 8288 / 7089 link-value text into (target, params) pairs."""
    entries = []
    i, n = 0, len(text)
    while i < n:
        while i < n and text[i] in " \t\r\n,":
            i += 1
        if i >= n:
            break
        if text[i] != "<":
            raise ValueError(f"expected '<' at offset {i}")
        end = text.find(">", i)
        if end < 0:
            raise ValueError("unterminated URI bracket")
        target = text[i + 1:end]
        i = end + 1
        params = {}
        while i < n:
            while i < n and text[i] in " \t\r\n":
                i += 1
            if i >= n or text[i] != ";":
                break
            i += 1
            while i < n and text[i] in " \t\r\n":
                i += 1
            eq = i
            while eq < n and text[eq] not in "=;,":
                eq += 1
            name = text[i:eq].strip().lower()
            value = ""
            i = eq
            if i < n and text[i] == "=":
                i += 1
                while i < n and text[i] in " \t":
                    i += 1
                if i < n and text[i] == '"':
                    i += 1
                    buf = []
                    while i < n and text[i] != '"':
                        if text[i] == "\\" and i + 1 < n:
                            i += 1
                        buf.append(text[i])
                        i += 1
                    i += 1  # closing quote
                    value = "".join(buf)
                else:
                    start = i
                    while i < n and text[i] not in ";,":
                        i += 1
                    value = text[start:i].strip()
            if name:
                params[name] = value
        entries.append((target, params))
    return entries


def link_relations(value):
    """Map each rel token in a Link header to its first target URI."""
    relations = {}
    for target, params in parse_link_value(value):
        for rel in params.get("rel", "").lower().split():
            relations.setdefault(rel, target)
    return relations


# --- operations ---

def detect_memento(uri, fetcher):
    """Fetch a URI and interpret it as a memento.

    Raises NotAMemento when the response lacks the Memento-Datetime
    header or an original relation; network errors propagate from the
    fetcher (ConnectionFailed / Timeout).
    """
    require_absolute(uri)
    response = fetcher.fetch(uri)
    header = response.headers.get("memento-datetime")
    if not header:
        raise NotAMemento(f"no Memento-Datetime header for {uri}")
    try:
        memento_datetime = parse_http_datetime(header)
    except (ValueError, TypeError) as exc:
        raise NotAMemento(f"unparseable Memento-Datetime for {uri}: {header!r}") from exc
    relations = {}
    link = response.headers.get("link")
    if link:
        try:
            relations = link_relations(link)
        except ValueError:
            relations = {}
    uri_r = relations.get("original")
    if not uri_r:
        raise NotAMemento(f"no rel=\"original\" Link relation for {uri}")
    return MementoRecord(
        urim=uri,
        uri_r=uri_r,
        memento_datetime=memento_datetime,
        archive_domain=registered_domain(uri),
        content_augmented=response.body,
        augmented_content_type=response.headers.get("content-type"),
        timemap_uri=relations.get("timemap"),
        timegate_uri=relations.get("timegate"),
    )


def derive_raw_urim(urim, profiles):
    """Raw memento URI per the first matching archive profile, else None."""
    profile = first_matching(urim, profiles)
    if profile is None:
        return None
    return profile.raw_urim(urim)


def derive_banner_free_urim(urim, profiles):
    profile = first_matching(urim, profiles)
    if profile is None:
        return None
    return profile.banner_free_urim(urim)


def resolve_memento(uri, fetcher, profiles, fetch_raw=True):
    """detect_memento plus raw-content retrieval when a profile allows it."""
    record = detect_memento(uri, fetcher)
    raw_urim = derive_raw_urim(uri, profiles)
    banner_free = derive_banner_free_urim(uri, profiles)
    record = replace(record, raw_urim=raw_urim, banner_free_urim=banner_free)
    if fetch_raw and raw_urim and raw_urim != uri:
        try:
            raw_response = fetcher.fetch(raw_urim)
        except Exception:
            raw_response = None  # callers fall back to augmented content
        if raw_response is not None and raw_response.ok:
            record = replace(
                record,
                content_raw=raw_response.body,
                raw_content_type=raw_response.headers.get("content-type"),
            )
    return record


def is_memento_response(response):
    return bool(response.headers.get("memento-datetime"))


def negotiate_datetime(uri_r, target, timegate_base, fetcher):
    """Datetime negotiation: URI-M nearest the target, or None.

    Issues Accept-Datetime against ``<timegate_base>/<uri_r>`` and
    follows the redirect chain to the selected memento.
    """
    gate_uri = timegate_base.rstrip("/") + "/" + uri_r
    response = fetcher.fetch(
        gate_uri, headers={"Accept-Datetime": format_http_datetime(target)}
    )
    if response.status == 200:
        return response.final_uri
    return None


@dataclass(frozen=True)
class TimeMapStats:
    uri_t: str
    uri_r: str
    memento_count: int
    first_memento_datetime: datetime | None
    last_memento_datetime: datetime | None
    first_urim: str | None
    last_urim: str | None


def parse_timemap(body):
    """RFC 7089 application/link-format TimeMap -> TimeMapStats.

    First/last are chosen by memento-datetime; equal datetimes keep
    document order, so stats are invariant under line permutation.
    """
    if isinstance(body, bytes):
        body = body.decode("utf-8", errors="replace")
    try:
        entries = parse_link_value(body)
    except ValueError as exc:
        raise MalformedTimeMap(str(exc)) from exc
    if not entries:
        raise MalformedTimeMap("empty TimeMap")
    uri_r, uri_t = "", ""
    mementos = []  # (datetime, document_position, urim)
    for position, (target, params) in enumerate(entries):
        rels = set(params.get("rel", "").lower().split())
        if "original" in rels:
            uri_r = uri_r or target
        if "self" in rels or "timemap" in rels:
            uri_t = uri_t or target
        if "memento" in rels:
            dt_value = params.get("datetime")
            if not dt_value:
                raise MalformedTimeMap(f"memento entry without datetime: {target}")
            try:
                dt = parse_http_datetime(dt_value)
            except (ValueError, TypeError) as exc:
                raise MalformedTimeMap(f"bad datetime {dt_value!r}") from exc
            mementos.append((dt, position, target))
    if not mementos:
        return TimeMapStats(uri_t, uri_r, 0, None, None, None, None)
    ordered = sorted(mementos, key=lambda item: (item[0], item[1]))
    first, last = ordered[0], ordered[-1]
    return TimeMapStats(
        uri_t=uri_t,
        uri_r=uri_r,
        memento_count=len(mementos),
        first_memento_datetime=first[0],
        last_memento_datetime=last[0],
        first_urim=first[2],
        last_urim=last[2],
    )


def build_timetravel_uri(uri_r, memento_datetime, aggregator_base):
    """Time Travel listing link: <base>/list/<YYYYMMDDHHMMSS>Z/<uri_r>."""
    return f"{aggregator_base.rstrip('/')}/list/{format_dt14(memento_datetime)}Z/{uri_r}"
