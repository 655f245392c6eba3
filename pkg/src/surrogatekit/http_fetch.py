"""The single outbound-HTTP seam.

Every archive and live-web request in the system goes through a Fetcher
so tests can substitute canned responses or point at the mock archive.
Fetchers must be safe for concurrent use; HttpFetcher is (requests
sessions are thread-safe for plain requests).
"""

from __future__ import annotations

from dataclasses import dataclass

import requests

from . import USER_AGENT
from .errors import ConnectionFailed, InvalidUri, Timeout

DEFAULT_TIMEOUT = 30.0


class Headers(dict):
    """Plain dict with case-insensitive string keys."""

    def __init__(self, items=None):
        super().__init__()
        for k, v in dict(items or {}).items():
            self[k] = v

    def __setitem__(self, key, value):
        super().__setitem__(key.lower(), value)

    def __getitem__(self, key):
        return super().__getitem__(key.lower())

    def __contains__(self, key):
        return super().__contains__(key.lower())

    def get(self, key, default=None):
        return super().get(key.lower(), default)


@dataclass
class FetchResponse:
    status: int
    headers: Headers
    body: bytes
    final_uri: str
    history: tuple = ()

    @property
    def content_type(self):
        return (self.headers.get("content-type") or "").split(";")[0].strip().lower()

    @property
    def ok(self):
        return self.status == 200

    def is_image(self):
        return self.content_type.startswith("image/")


def require_absolute(uri):
    from urllib.parse import urlsplit

    try:
        parts = urlsplit(uri)
    except ValueError as exc:
        raise InvalidUri(f"unparseable URI: {uri!r}") from exc
    if parts.scheme not in ("http", "https") or not parts.netloc:
        raise InvalidUri(f"URI lacks an http(s) scheme or host: {uri!r}")
    return uri


class HttpFetcher:
    """requests-backed fetcher with one timeout and User-Agent for all calls."""

    def __init__(self, timeout=DEFAULT_TIMEOUT, user_agent=USER_AGENT, session=None):
        self.timeout = timeout
        self.session = session or requests.Session()
        self.session.headers["User-Agent"] = user_agent

    def fetch(self, uri, headers=None, allow_redirects=True, timeout=None):
        require_absolute(uri)
        try:
            resp = self.session.get(
                uri,
                headers=headers or {},
                allow_redirects=allow_redirects,
                timeout=timeout or self.timeout,
            )
        except requests.Timeout as exc:
            raise Timeout(f"timed out fetching {uri}") from exc
        except requests.ConnectionError as exc:
            raise ConnectionFailed(f"connection failed for {uri}") from exc
        except requests.RequestException as exc:
            raise ConnectionFailed(f"request failed for {uri}: {exc}") from exc
        return FetchResponse(
            status=resp.status_code,
            headers=Headers(resp.headers),
            body=resp.content,
            final_uri=resp.url,
            history=tuple(r.url for r in resp.history),
        )
