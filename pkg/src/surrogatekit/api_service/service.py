"""Routing, status mapping, and response assembly for the HTTP API.

The URI-M travels in the path unencoded: everything after the endpoint
prefix, verbatim (including any '?' or '#'), is the target URI. The
handler therefore works from the raw request target, never the parsed
query string.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from importlib import resources
from pathlib import Path

from .. import USER_AGENT
from ..content_analysis import (
    extract_page_metadata,
    rank_paragraphs,
    rank_sentences,
)
from ..errors import InvalidUri, SurrogateError
from ..http_fetch import HttpFetcher, require_absolute
from ..image_selection import ScoringWeights, rank_images, ranked_image_uris, select_best_image
from ..memento_client import format_iso8601, parse_timemap, resolve_memento
from ..products import (
    CardOptions,
    CommandRenderer,
    ProductContext,
    ThumbnailPrefs,
    build_docreel,
    build_imagereel,
    build_social_card,
    build_wordcloud,
    render_thumbnail,
)
from ..products.docreel import DocreelPrefs
from ..products.imagereel import ImagereelPrefs
from ..products.wordcloud import WordcloudPrefs
from ..profiles import load_profiles
from .cache import TtlCache
from .collection import collection_enrichment
from .config import ServiceConfig
from .preferences import parse_prefer

MEMENTO_ENDPOINTS = frozenset(
    (
        "contentdata", "bestimage", "imagedata", "archivedata",
        "originalresourcedata", "seeddata", "paragraphrank",
        "sentencerank", "page-metadata",
    )
)
PRODUCT_ENDPOINTS = frozenset(
    ("socialcard", "thumbnail", "imagereel", "wordcloud", "docreel")
)

MEMENTO_PREFIX = "/services/memento/"
PRODUCT_PREFIX = "/services/product/"

PRODUCT_DEADLINE_SECONDS = 300.0


@dataclass
class ServiceResponse:
    status: int
    body: bytes
    content_type: str = "application/json"
    headers: dict = field(default_factory=dict)


def _now_iso():
    return format_iso8601(datetime.now(timezone.utc))


class SurrogateService:
    """Everything behind the HTTP surface, callable without a socket."""

    def __init__(self, config=None, fetcher=None, renderer=None, favicon_resolver=None):
        self.config = config or ServiceConfig()
        self.profiles = load_profiles(self.config.archive_profiles_path)
        self.fetcher = fetcher or HttpFetcher(
            timeout=self.config.fetch_timeout,
            user_agent=self.config.user_agent or USER_AGENT,
        )
        self.renderer = renderer or CommandRenderer(self.config.renderer_command)
        self.favicon_resolver = favicon_resolver
        self.cache = TtlCache(self.config.cache_capacity, self.config.cache_ttl)
        self.weights = ScoringWeights()

    # --- shared plumbing ---

    def product_context(self):
        return ProductContext(
            fetcher=self.fetcher,
            profiles=tuple(self.profiles),
            weights=self.weights,
            timegate_base=self.config.timegate_base,
            aggregator_base=self.config.aggregator_base,
            default_image_uri=self.config.base_url() + "/static/default-globe.png",
            favicon_resolver=self.favicon_resolver,
            service_base=self.config.base_url(),
            renderer=self.renderer,
        )

    def _resolve_cached(self, urim):
        entry = self.cache.get(("record", urim))
        if entry is None:
            record = resolve_memento(urim, self.fetcher, self.profiles)
            entry = {"record": record, "lock": threading.Lock()}
            self.cache.put(("record", urim), entry)
        return entry

    def _candidates(self, entry):
        with entry["lock"]:
            if "candidates" not in entry:
                entry["candidates"] = rank_images(
                    entry["record"],
                    self.fetcher,
                    self.weights,
                    self.config.timegate_base,
                    keep_bytes=True,
                )
            return entry["candidates"]

    # --- request entry point ---

    def handle(self, raw_path, headers=None):
        headers = headers or {}
        received_at = _now_iso()
        try:
            return self._route(raw_path, headers, received_at)
        except SurrogateError as exc:
            return self._error_response(exc, raw_path, received_at)
        except Exception as exc:  # status-code totality: nothing escapes unmapped
            wrapped = SurrogateError(f"internal error: {exc}")
            return self._error_response(wrapped, raw_path, received_at)

    def _error_response(self, exc, raw_path, received_at):
        body = {
            "urim": _urim_from_path(raw_path),
            "generation-time": _now_iso(),
            "error": type(exc).__name__,
            "message": str(exc),
        }
        return ServiceResponse(
            status=exc.http_status,
            body=_json_bytes(body),
        )

    def _route(self, raw_path, headers, received_at):
        if raw_path.startswith(MEMENTO_PREFIX):
            endpoint, urim = _split_endpoint(raw_path, MEMENTO_PREFIX)
            if endpoint not in MEMENTO_ENDPOINTS:
                return _not_found(f"unknown memento service: {endpoint}")
            return self._memento_endpoint(endpoint, urim, headers)
        if raw_path.startswith(PRODUCT_PREFIX):
            endpoint, urim = _split_endpoint(raw_path, PRODUCT_PREFIX)
            if endpoint not in PRODUCT_ENDPOINTS:
                return _not_found(f"unknown product: {endpoint}")
            return self._product_endpoint(endpoint, urim, headers)
        static = self._static_response(raw_path)
        if static is not None:
            return static
        return _not_found(f"no such endpoint: {raw_path.split('?')[0][:200]}")

    # --- memento information endpoints ---

    def _memento_endpoint(self, endpoint, urim, headers):
        require_absolute(urim)
        prefset = parse_prefer(headers.get("prefer"), endpoint)
        entry = self._resolve_cached(urim)
        record = entry["record"]
        body = {"urim": urim, "generation-time": None}  # filled last

        if endpoint == "contentdata":
            content, ctype = record.best_content()
            from ..content_analysis import extract_description, extract_title

            body["title"] = extract_title(content, ctype)
            body["snippet"] = extract_description(content, ctype)
            body["memento-datetime"] = format_iso8601(record.memento_datetime)
        elif endpoint == "bestimage":
            ctx = self.product_context()
            body["best-image-uri"] = select_best_image(
                record,
                self.fetcher,
                weights=self.weights,
                timegate_base=self.config.timegate_base,
                default_image_uri=ctx.default_image_uri,
                candidates=self._candidates(entry),
            )
        elif endpoint == "imagedata":
            candidates = self._candidates(entry)
            body["processed urim"] = record.raw_urim or record.urim
            body["images"] = {c.urim: _image_diagnostics(c, self.weights) for c in candidates}
            body["ranked images"] = ranked_image_uris(candidates)
        elif endpoint == "archivedata":
            from ..domains import archive_name
            from ..favicon_discovery import archive_home_uri, discover_archive_favicon

            body["archive-uri"] = archive_home_uri(record.urim)
            body["archive-name"] = archive_name(record.urim)
            favicon = discover_archive_favicon(
                archive_home_uri(record.urim), self.fetcher, self.favicon_resolver
            )
            body["archive-favicon"] = favicon.uri
            enrichment = collection_enrichment(record, self.fetcher, self.profiles)
            if "collection-id" in enrichment:
                body["archive-collection-id"] = enrichment["collection-id"]
            if "collection-name" in enrichment:
                body["archive-collection-name"] = enrichment["collection-name"]
            if "collection-uri" in enrichment:
                body["archive-collection-uri"] = enrichment["collection-uri"]
        elif endpoint == "originalresourcedata":
            from ..favicon_discovery import discover_original_favicon
            from ..products.bundle import original_link_status

            favicon = discover_original_favicon(
                record, self.fetcher, self.favicon_resolver, self.config.timegate_base
            )
            body["original-uri"] = record.uri_r
            body["original-domain"] = record.original_domain
            body["original-favicon"] = favicon.uri
            body["original-linkstatus"] = original_link_status(record.uri_r, self.fetcher)
        elif endpoint == "seeddata":
            body.update(self._seeddata(record))
        elif endpoint == "paragraphrank":
            content, ctype = record.best_content()
            paragraphs, algorithm = rank_paragraphs(
                content, prefset.values.get("algorithm", "readability"), content_type=ctype
            )
            body["algorithm"] = algorithm
            body["scored paragraphs"] = [
                {"index": p.index, "score": p.score, "text": p.text} for p in paragraphs
            ]
        elif endpoint == "sentencerank":
            content, ctype = record.best_content()
            sentences, paragraph_algorithm, sentence_algorithm = rank_sentences(
                content,
                prefset.values.get("algorithm", "readability/lede3"),
                content_type=ctype,
            )
            body["paragraph scoring algorithm"] = paragraph_algorithm
            body["sentence ranking algorithm"] = sentence_algorithm
            body["scored sentences"] = [
                {
                    "rank": s.rank,
                    "score": s.score,
                    "paragraph index": s.paragraph_index,
                    "text": s.text,
                }
                for s in sentences
            ]
        elif endpoint == "page-metadata":
            content, ctype = record.best_content()
            body["page-metadata"] = extract_page_metadata(content, ctype)

        body["generation-time"] = _now_iso()
        response = ServiceResponse(status=200, body=_json_bytes(body))
        if prefset.applied:
            response.headers["Preference-Applied"] = prefset.header_value()
        return response

    def _seeddata(self, record):
        fields = {}
        fields["original-url"] = record.uri_r
        fields["timemap"] = record.timemap_uri
        fields["timegate"] = record.timegate_uri
        stats = None
        if record.timemap_uri:
            try:
                timemap_response = self.fetcher.fetch(record.timemap_uri)
                if timemap_response.ok:
                    stats = parse_timemap(timemap_response.body)
            except SurrogateError:
                stats = None
        if stats is not None and stats.memento_count:
            fields["memento-count"] = stats.memento_count
            fields["first-memento-datetime"] = format_iso8601(stats.first_memento_datetime)
            fields["first-urim"] = stats.first_urim
            fields["last-memento-datetime"] = format_iso8601(stats.last_memento_datetime)
            fields["last-urim"] = stats.last_urim
        enrichment = collection_enrichment(record, self.fetcher, self.profiles)
        if "seed-metadata" in enrichment:
            fields["metadata"] = enrichment["seed-metadata"]
        return fields

    # --- product endpoints ---

    def _product_endpoint(self, endpoint, urim, headers):
        require_absolute(urim)
        prefset = parse_prefer(headers.get("prefer"), endpoint)
        entry = self._resolve_cached(urim)
        record = entry["record"]
        ctx = self.product_context()
        applied_header = prefset.header_value()

        if endpoint == "socialcard":
            options = CardOptions(
                datauri_favicon=prefset.values["datauri_favicon"],
                datauri_image=prefset.values["datauri_image"],
                using_remote_javascript=prefset.values["using_remote_javascript"],
                minify_markup=prefset.values["minify_markup"],
            )
            html, _ = build_social_card(
                record, ctx, options, candidates=self._candidates(entry)
            )
            response = ServiceResponse(200, html.encode("utf-8"), "text/html; charset=utf-8")
        elif endpoint == "thumbnail":
            prefs = ThumbnailPrefs(
                viewport_width=prefset.values["viewport_width"],
                viewport_height=prefset.values["viewport_height"],
                thumbnail_width=prefset.values["thumbnail_width"],
                thumbnail_height=prefset.values["thumbnail_height"],
                timeout=prefset.values["timeout"],
                remove_banner=prefset.values["remove_banner"],
            )
            png, applied = render_thumbnail(urim, prefs, self.renderer, self.profiles)
            if applied is not prefs and "remove_banner" in prefset.applied:
                prefset.applied["remove_banner"] = "no"
            applied_header = prefset.header_value()
            response = ServiceResponse(200, png, "image/png")
        elif endpoint == "imagereel":
            prefs = ImagereelPrefs(
                duration=prefset.values["duration"],
                imagecount=prefset.values["imagecount"],
                width=prefset.values["width"],
                height=prefset.values["height"],
            )
            gif, _ = build_imagereel(record, ctx, prefs, candidates=self._candidates(entry))
            response = ServiceResponse(200, gif, "image/gif")
        elif endpoint == "wordcloud":
            prefs = WordcloudPrefs(
                colormap=prefset.values["colormap"],
                background_color=prefset.values["background_color"],
                textonly=prefset.values["textonly"],
            )
            png, _, terms = build_wordcloud(record, ctx, prefs)
            if prefs.textonly:
                payload = _json_bytes([term for term, _ in terms])
                response = ServiceResponse(200, payload, "application/json")
            else:
                response = ServiceResponse(200, png, "image/png")
        else:  # docreel
            prefs = DocreelPrefs(
                duration=prefset.values["duration"],
                imagecount=prefset.values["imagecount"],
                sentencecount=prefset.values["sentencecount"],
                width=prefset.values["width"],
                height=prefset.values["height"],
            )
            gif, _, _ = build_docreel(
                record,
                ctx,
                prefs,
                deadline_seconds=PRODUCT_DEADLINE_SECONDS,
                candidates=self._candidates(entry),
            )
            response = ServiceResponse(200, gif, "image/gif")

        if applied_header:
            response.headers["Preference-Applied"] = applied_header
        return response

    # --- static assets ---

    def _static_response(self, raw_path):
        path = raw_path.split("?", 1)[0].split("#", 1)[0]
        if path in ("", "/", "/index.html"):
            custom = self._static_dir_file("index.html")
            if custom is not None:
                return ServiceResponse(200, custom, "text/html; charset=utf-8")
            return ServiceResponse(200, _BUILTIN_INDEX, "text/html; charset=utf-8")
        if not path.startswith("/static/"):
            return None
        name = path[len("/static/"):]
        if not name or ".." in name or name.startswith("/"):
            return _not_found("bad static path")
        custom = self._static_dir_file(name)
        if custom is not None:
            return ServiceResponse(200, custom, _static_content_type(name))
        if "/" not in name:
            # bundled names use underscores; the public URI uses hyphens
            for candidate in (name.replace("-", "_"), name):
                try:
                    data = resources.files("surrogatekit.data").joinpath(candidate).read_bytes()
                except (FileNotFoundError, OSError):
                    continue
                return ServiceResponse(200, data, _static_content_type(name))
        return _not_found(f"no static asset {name}")

    def _static_dir_file(self, name):
        if not self.config.static_dir:
            return None
        root = Path(self.config.static_dir).resolve()
        candidate = (root / name).resolve()
        if root in candidate.parents and candidate.is_file():
            return candidate.read_bytes()
        return None

    # --- socket server ---

    def make_server(self):
        service = self

        class Handler(BaseHTTPRequestHandler):
            protocol_version = "HTTP/1.1"

            def do_GET(self):
                response = service.handle(self.path, _lower_headers(self.headers))
                self._reply(response)

            def do_POST(self):
                self._reply(
                    ServiceResponse(
                        400,
                        _json_bytes({"error": "InvalidRequest", "message": "GET only"}),
                    )
                )

            do_PUT = do_DELETE = do_PATCH = do_POST

            def _reply(self, response):
                try:
                    self.send_response(response.status)
                    self.send_header("Content-Type", response.content_type)
                    self.send_header("Content-Length", str(len(response.body)))
                    for name, value in response.headers.items():
                        self.send_header(name, value)
                    self.end_headers()
                    self.wfile.write(response.body)
                except (BrokenPipeError, ConnectionResetError):
                    pass

            def log_message(self, format, *args):  # noqa: A002 - stdlib signature
                pass

        server = ThreadingHTTPServer((self.config.host, self.config.port), Handler)
        server.daemon_threads = True
        if self.config.port == 0:
            self.config.port = server.server_address[1]
        return server


def _lower_headers(message):
    return {k.lower(): v for k, v in message.items()}


def _split_endpoint(raw_path, prefix):
    rest = raw_path[len(prefix):]
    endpoint, _, urim = rest.partition("/")
    if not urim:
        raise InvalidUri("no URI-M in request path")
    return endpoint, urim


def _urim_from_path(raw_path):
    for prefix in (MEMENTO_PREFIX, PRODUCT_PREFIX):
        if raw_path.startswith(prefix):
            _, _, urim = raw_path[len(prefix):].partition("/")
            return urim or None
    return None


_STATIC_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".mjs": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".json": "application/json",
    ".png": "image/png",
    ".gif": "image/gif",
    ".jpg": "image/jpeg",
    ".jpeg": "image/jpeg",
    ".svg": "image/svg+xml",
    ".ico": "image/x-icon",
    ".txt": "text/plain; charset=utf-8",
    ".map": "application/json",
}


def _static_content_type(name):
    dot = name.rfind(".")
    if dot >= 0:
        return _STATIC_TYPES.get(name[dot:].lower(), "application/octet-stream")
    return "application/octet-stream"


def _json_bytes(payload):
    return json.dumps(payload, ensure_ascii=False, indent=2).encode("utf-8")


def _not_found(message):
    return ServiceResponse(
        404,
        _json_bytes(
            {"urim": None, "generation-time": _now_iso(), "error": "NotFound", "message": message}
        ),
    )


def _image_diagnostics(candidate, weights):
    diagnostics = {"source": candidate.source, "fetch status": candidate.fetch_status}
    features = candidate.features
    if features is None:
        return diagnostics
    diagnostics.update(
        {
            "content-type": features.content_type,
            "is-a-memento": features.is_a_memento,
            "width": features.width,
            "height": features.height,
            "blank columns in histogram": features.blank_histogram_columns,
            "size in pixels": features.size_in_pixels,
            "ratio width/height": features.ratio_width_height,
            "byte size": features.byte_size,
            "colorcount": features.color_count,
            # perceptual hashes are placeholders: no algorithm consumes them
            "pHash": None,
            "aHash": None,
            "dHash_horizontal": None,
            "dHash_vertical": None,
            "wHash": None,
            "N": features.N,
            "n": features.n,
            "k1": weights.k1,
            "k2": weights.k2,
            "k3": weights.k3,
            "k4": weights.k4,
            "k5": weights.k5,
            "calculated score": candidate.score,
        }
    )
    return diagnostics


_BUILTIN_INDEX = b"""<!DOCTYPE html>
<html><head><title>Surrogate service</title></head>
<body>
<h1>Surrogate service</h1>
<p>Memento information: <code>/services/memento/{contentdata|bestimage|imagedata|archivedata|originalresourcedata|seeddata|paragraphrank|sentencerank|page-metadata}/&lt;URI-M&gt;</code></p>
<p>Products: <code>/services/product/{socialcard|thumbnail|imagereel|wordcloud|docreel}/&lt;URI-M&gt;</code></p>
</body></html>
"""
