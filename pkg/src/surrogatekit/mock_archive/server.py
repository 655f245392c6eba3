"""The mock archive HTTP server.

Serves, per the Memento Protocol:

* ``/web/<dt14>/<uri_r>``     augmented memento (banner + rewritten links)
* ``/web/<dt14>im_/<uri_r>``  raw memento (verbatim capture body)
* ``/web/<dt14>if_/<uri_r>``  banner-free memento (rewritten, no banner)
* ``/timegate/<uri_r>``       Accept-Datetime negotiation, 302 to nearest
* ``/timemap/link/<uri_r>``   RFC 7089 link-format TimeMap
* ``/collections/<id>``       collection page (JSON)
* manifest ``live`` paths     simulated live-web responses

plus injected faults (delays for 504 testing, connection resets for
502, status overrides). Nearest-capture ties break toward the earlier
capture.
"""

from __future__ import annotations

import json
import re
import socket
import struct
import threading
import time
from datetime import timezone
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from ..memento_client import format_http_datetime, parse_dt14, parse_http_datetime
from .manifest import ARCHIVE_TOKEN, BANNER_HTML, FixtureManifest

_WEB_PATH = re.compile(r"^/web/(\d{14})(im_|if_)?/(.+)$", re.DOTALL)
_COLLECTION_WEB_PATH = re.compile(r"^/(\d{1,8})/(\d{14})(im_|if_)?/(.+)$", re.DOTALL)
_SRC_ATTR = re.compile(r"""(src|href)\s*=\s*(["'])(.*?)\2""", re.IGNORECASE | re.DOTALL)


class MockArchiveServer:
    def __init__(self, manifest, host="127.0.0.1", port=0):
        if not isinstance(manifest, FixtureManifest):
            manifest = FixtureManifest(manifest)
        self.manifest = manifest
        self.host = host
        self._httpd = _build_httpd(self, host, port)
        self.port = self._httpd.server_address[1]
        self._thread = None

    @property
    def base_url(self):
        return f"http://{self.host}:{self.port}"

    def substitute(self, text):
        return text.replace(ARCHIVE_TOKEN, self.base_url)

    def resolve_uri_r(self, uri_r):
        return self.substitute(uri_r)

    # --- lifecycle ---

    def start(self):
        self._thread = threading.Thread(target=self._httpd.serve_forever, daemon=True)
        self._thread.start()
        return self

    def stop(self):
        self._httpd.shutdown()
        self._httpd.server_close()
        if self._thread:
            self._thread.join(timeout=5)

    def __enter__(self):
        return self.start()

    def __exit__(self, *exc_info):
        self.stop()

    # --- lookups (all URIs compared after {ARCHIVE} substitution) ---

    def find_original(self, uri_r):
        for candidate, original in self.manifest.originals.items():
            if self.substitute(candidate) == uri_r:
                return original
        return None

    def urim_for(self, uri_r, dt14, flavor="", collection_id=None):
        if collection_id is None:
            original = self.find_original(uri_r)
            collection_id = original.collection_id if original else None
        prefix = collection_id if collection_id else "web"
        return f"{self.base_url}/{prefix}/{dt14}{flavor}/{uri_r}"

    def nearest_capture(self, original, target_dt):
        def distance(capture):
            capture_dt = parse_dt14(capture.datetime14)
            return (abs((capture_dt - target_dt).total_seconds()), capture.datetime14)

        return min(original.captures, key=distance)

    # --- body synthesis ---

    def augmented_body(self, original, capture, include_banner=True):
        if capture.augmented_override is not None:
            return self.substitute(
                capture.augmented_override.decode("utf-8", "replace")
            ).encode("utf-8")
        if not capture.content_type.startswith("text/html"):
            return capture.body
        text = self.substitute(capture.body.decode("utf-8", "replace"))
        text = self._rewrite_references(text, capture.datetime14)
        if include_banner:
            match = re.search(r"<body[^>]*>", text, re.IGNORECASE)
            if match:
                text = text[: match.end()] + "\n" + BANNER_HTML + text[match.end():]
            else:
                text = BANNER_HTML + text
        return text.encode("utf-8")

    def _rewrite_references(self, text, dt14):
        """Point sub-resource references back into the archive.

        Embedded resources (src) get the raw ``im_`` flavor like real
        playback engines use for images; navigation (href) stays on the
        augmented flavor.
        """
        known = {self.substitute(uri): True for uri in self.manifest.originals}

        def replace(match):
            attr, quote, value = match.group(1), match.group(2), match.group(3)
            absolute = self.substitute(value)
            if absolute in known and not absolute.startswith(self.base_url + "/web/"):
                flavor = "im_" if attr.lower() == "src" else ""
                return f"{attr}={quote}{self.urim_for(absolute, dt14, flavor)}{quote}"
            return match.group(0)

        return _SRC_ATTR.sub(replace, text)

    def timemap_body(self, uri_r, original):
        lines = [
            f'<{uri_r}>; rel="original"',
            f'<{self.base_url}/timemap/link/{uri_r}>; rel="self"; '
            'type="application/link-format"',
            f'<{self.base_url}/timegate/{uri_r}>; rel="timegate"',
        ]
        captures = sorted(original.captures, key=lambda c: c.datetime14)
        for index, capture in enumerate(captures):
            rels = ["memento"]
            if index == 0:
                rels.insert(0, "first")
            if index == len(captures) - 1:
                rels.insert(0, "last")
            dt = parse_dt14(capture.datetime14)
            lines.append(
                f'<{self.urim_for(uri_r, capture.datetime14)}>; '
                f'rel="{" ".join(rels)}"; datetime="{format_http_datetime(dt)}"'
            )
        return (",\n".join(lines) + "\n").encode("utf-8")

    def memento_headers(self, uri_r, capture):
        dt = parse_dt14(capture.datetime14).replace(tzinfo=timezone.utc)
        link = (
            f'<{uri_r}>; rel="original", '
            f'<{self.base_url}/timemap/link/{uri_r}>; rel="timemap"; '
            'type="application/link-format", '
            f'<{self.base_url}/timegate/{uri_r}>; rel="timegate"'
        )
        return {
            "Memento-Datetime": format_http_datetime(dt),
            "Link": link,
        }


def _build_httpd(archive, host, port):
    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def do_GET(self):
            fault = self._matching_fault()
            if fault is not None:
                if fault.delay_seconds:
                    time.sleep(fault.delay_seconds)
                if fault.reset:
                    self._reset_connection()
                    return
                if fault.status is not None:
                    self._send(fault.status, b"injected fault", "text/plain")
                    return
            self._route()

        def _matching_fault(self):
            for fault in archive.manifest.faults:
                if fault.path_contains in self.path:
                    return fault
            return None

        def _reset_connection(self):
            # SO_LINGER 0 makes close() send RST instead of FIN
            self.connection.setsockopt(
                socket.SOL_SOCKET, socket.SO_LINGER, struct.pack("ii", 1, 0)
            )
            self.close_connection = True

        def _route(self):
            path = self.path
            match = _WEB_PATH.match(path)
            if match:
                self._serve_memento(*match.groups())
                return
            match = _COLLECTION_WEB_PATH.match(path)
            if match:
                _, dt14, flavor, uri_r = match.groups()
                self._serve_memento(dt14, flavor, uri_r)
                return
            if path.startswith("/timegate/"):
                self._serve_timegate(path[len("/timegate/"):])
                return
            if path.startswith("/timemap/link/"):
                self._serve_timemap(path[len("/timemap/link/"):])
                return
            if path.startswith("/collections/"):
                self._serve_collection(path[len("/collections/"):])
                return
            live = archive.manifest.live.get(path.split("?")[0])
            if live is not None:
                self._send(live.status, archive.substitute(
                    live.body.decode("utf-8", "replace")
                ).encode("utf-8") if live.content_type.startswith("text/") else live.body,
                    live.content_type)
                return
            self._send(404, b"not in archive", "text/plain")

        def _serve_memento(self, dt14, flavor, uri_r):
            original = archive.find_original(uri_r)
            if original is None:
                self._send(404, b"no such original", "text/plain")
                return
            captures = original.capture_map()
            capture = captures.get(dt14) or archive.nearest_capture(
                original, parse_dt14(dt14)
            )
            if flavor == "im_":
                body = archive.substitute(capture.body.decode("utf-8", "replace")).encode(
                    "utf-8"
                ) if capture.content_type.startswith("text/") else capture.body
            elif flavor == "if_":
                body = archive.augmented_body(original, capture, include_banner=False)
            else:
                body = archive.augmented_body(original, capture)
            headers = archive.memento_headers(uri_r, capture)
            self._send(200, body, capture.content_type, headers)

        def _serve_timegate(self, uri_r):
            original = archive.find_original(uri_r)
            if original is None:
                self._send(404, b"no mementos", "text/plain")
                return
            accept = self.headers.get("Accept-Datetime")
            if accept:
                try:
                    target = parse_http_datetime(accept)
                except (ValueError, TypeError):
                    self._send(400, b"bad Accept-Datetime", "text/plain")
                    return
            else:
                target = parse_dt14(original.captures[-1].datetime14)
            capture = archive.nearest_capture(original, target)
            location = archive.urim_for(uri_r, capture.datetime14)
            self._send(
                302,
                b"",
                "text/plain",
                {
                    "Location": location,
                    "Vary": "accept-datetime",
                    **archive.memento_headers(uri_r, capture),
                },
            )

        def _serve_timemap(self, uri_r):
            original = archive.find_original(uri_r)
            if original is None:
                self._send(404, b"no timemap", "text/plain")
                return
            self._send(
                200,
                archive.timemap_body(uri_r, original),
                "application/link-format",
            )

        def _serve_collection(self, collection_id):
            collection = archive.manifest.collections.get(collection_id.strip("/"))
            if collection is None:
                self._send(404, b"no such collection", "text/plain")
                return
            doc = {
                "id": collection.id,
                "name": collection.name,
                "uri": archive.substitute(collection.uri)
                if collection.uri
                else f"{archive.base_url}/collections/{collection.id}",
                "seed_metadata": {
                    archive.substitute(uri): metadata
                    for uri, metadata in collection.seed_metadata.items()
                },
            }
            self._send(200, json.dumps(doc).encode("utf-8"), "application/json")

        def _send(self, status, body, content_type, extra_headers=None):
            try:
                self.send_response(status)
                self.send_header("Content-Type", content_type)
                self.send_header("Content-Length", str(len(body)))
                for name, value in (extra_headers or {}).items():
                    self.send_header(name, value)
                self.end_headers()
                self.wfile.write(body)
            except (BrokenPipeError, ConnectionResetError):
                pass

        def log_message(self, format, *args):  # noqa: A002 - stdlib signature
            pass

    httpd = ThreadingHTTPServer((host, port), Handler)
    httpd.daemon_threads = True
    return httpd
