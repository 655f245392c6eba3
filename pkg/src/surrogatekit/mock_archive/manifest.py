"""Fixture manifest: what the mock archive holds and how it misbehaves.

JSON schema (all bodies UTF-8 text or base64 for binary)::

    {
      "originals": [
        {"uri_r": "http://site.example/page.html",
         "captures": [
            {"datetime14": "20090522221251",
             "content_type": "text/html",
             "body": "<html>... raw, banner-free ...</html>",
             "augmented_body": null,          // optional explicit override
             "resources": [                    // archived sub-resources
                {"uri_r": "http://site.example/logo.png",
                 "content_type": "image/png",
                 "body_base64": "...",
                 "datetime14": null}           // defaults to the page's
             ]}
         ]}
      ],
      "live": {"/live/site.example/favicon.ico":
               {"status": 200, "content_type": "image/x-icon", "body_base64": "..."}},
      "collections": [{"id": "2950", "name": "...", "uri": null,
                       "seed_metadata": {"<uri_r>": {"title": "..."}}}],
      "faults": [{"path_contains": "/web/19990101",
                  "delay_seconds": 3.0, "reset": false, "status": null}]
    }

The token ``{ARCHIVE}`` anywhere in URIs or bodies is replaced with the
server's own base URL once the port is known, so manifests never
hard-code a host. Augmented bodies are synthesized from raw ones by
injecting the banner and rewriting sub-resource references into
``/web/<dt14>im_/`` archive URIs; supplying an explicit augmented body
is allowed but it must contain the banner marker.
"""

from __future__ import annotations

import base64
import json
import re
from dataclasses import dataclass, field

ARCHIVE_TOKEN = "{ARCHIVE}"
BANNER_MARKER = "<!-- mock-archive banner -->"
BANNER_HTML = (
    f"{BANNER_MARKER}\n"
    '<div id="mock-archive-banner" style="background:#ffd">'
    "You are viewing an archived capture.</div>\n"
)

_DT14 = re.compile(r"^\d{14}$")


class ManifestError(ValueError):
    pass


@dataclass
class Capture:
    datetime14: str
    content_type: str
    body: bytes
    augmented_override: bytes | None = None


@dataclass
class Original:
    uri_r: str
    captures: list = field(default_factory=list)
    collection_id: str | None = None  # Archive-It style /<id>/<dt14>/ paths

    def capture_map(self):
        return {c.datetime14: c for c in self.captures}


@dataclass
class LiveEntry:
    status: int
    content_type: str
    body: bytes


@dataclass
class Fault:
    path_contains: str
    delay_seconds: float = 0.0
    reset: bool = False
    status: int | None = None


@dataclass
class Collection:
    id: str
    name: str
    uri: str | None = None
    seed_metadata: dict = field(default_factory=dict)


def _body_bytes(entry, *, required=True):
    if entry.get("body_base64") is not None:
        return base64.b64decode(entry["body_base64"])
    if entry.get("body") is not None:
        body = entry["body"]
        return body.encode("utf-8") if isinstance(body, str) else bytes(body)
    if required:
        raise ManifestError(f"entry without body or body_base64: {entry.keys()}")
    return b""


class FixtureManifest:
    def __init__(self, doc):
        if isinstance(doc, (str, bytes)):
            doc = json.loads(doc)
        self.originals = {}
        self.live = {}
        self.collections = {}
        self.faults = []
        self._load(doc)
        self._validate()

    @classmethod
    def from_file(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls(json.load(fh))

    def _load(self, doc):
        for original_doc in doc.get("originals", []):
            self._add_original(original_doc)
        for path, entry in (doc.get("live") or {}).items():
            self.live[path] = LiveEntry(
                status=int(entry.get("status", 200)),
                content_type=entry.get("content_type", "text/html"),
                body=_body_bytes(entry, required=False),
            )
        for coll in doc.get("collections", []):
            collection = Collection(
                id=str(coll["id"]),
                name=coll.get("name", ""),
                uri=coll.get("uri"),
                seed_metadata=coll.get("seed_metadata", {}),
            )
            self.collections[collection.id] = collection
        for fault in doc.get("faults", []):
            self.faults.append(
                Fault(
                    path_contains=fault["path_contains"],
                    delay_seconds=float(fault.get("delay_seconds", 0.0)),
                    reset=bool(fault.get("reset", False)),
                    status=fault.get("status"),
                )
            )

    def _add_original(self, original_doc):
        uri_r = original_doc["uri_r"]
        original = self.originals.setdefault(uri_r, Original(uri_r=uri_r))
        if original_doc.get("collection_id"):
            original.collection_id = str(original_doc["collection_id"])
        for capture_doc in original_doc.get("captures", []):
            dt14 = str(capture_doc["datetime14"])
            if not _DT14.match(dt14):
                raise ManifestError(f"bad datetime14 {dt14!r} for {uri_r}")
            augmented = capture_doc.get("augmented_body")
            capture = Capture(
                datetime14=dt14,
                content_type=capture_doc.get("content_type", "text/html"),
                body=_body_bytes(capture_doc),
                augmented_override=(
                    augmented.encode("utf-8") if isinstance(augmented, str) else augmented
                ),
            )
            original.captures.append(capture)
            for resource_doc in capture_doc.get("resources", []):
                self._add_original(
                    {
                        "uri_r": resource_doc["uri_r"],
                        "collection_id": original_doc.get("collection_id"),
                        "captures": [
                            {
                                "datetime14": resource_doc.get("datetime14", dt14),
                                "content_type": resource_doc.get(
                                    "content_type", "application/octet-stream"
                                ),
                                "body": resource_doc.get("body"),
                                "body_base64": resource_doc.get("body_base64"),
                            }
                        ],
                    }
                )
        original.captures.sort(key=lambda c: c.datetime14)

    def _validate(self):
        for original in self.originals.values():
            if not original.captures:
                raise ManifestError(f"original without captures: {original.uri_r}")
            for capture in original.captures:
                if BANNER_MARKER.encode() in capture.body:
                    raise ManifestError(
                        f"raw body contains the banner marker: {original.uri_r}"
                    )
                if (
                    capture.augmented_override is not None
                    and BANNER_MARKER.encode() not in capture.augmented_override
                ):
                    raise ManifestError(
                        f"explicit augmented body lacks the banner marker: {original.uri_r}"
                    )
