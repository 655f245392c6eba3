"""Collection enrichment for archives with collection-bearing URI paths.

When the URI-M matches a collection-bearing profile, the collection id
comes from the path (the segment before the 14-digit datetime) and the
name, URI, and per-seed metadata come from the archive's collection
page, which the mock archive (and any cooperating archive) serves as
JSON at /collections/<id>. Failures degrade to absent fields.
"""

from __future__ import annotations

import json
from urllib.parse import urljoin

from ..errors import SurrogateError
from ..profiles import first_matching


def collection_enrichment(record, fetcher, profiles):
    """Returns {collection-id, collection-name, collection-uri, seed-metadata}
    or an empty dict when the memento's archive has no collections."""
    profile = first_matching(record.urim, profiles)
    if profile is None:
        return {}
    collection_id = profile.collection_id(record.urim)
    if not collection_id:
        return {}
    enrichment = {"collection-id": collection_id}
    page_uri = urljoin(record.urim, f"/collections/{collection_id}")
    try:
        response = fetcher.fetch(page_uri)
        if response.ok:
            doc = json.loads(response.body.decode("utf-8", "replace"))
            if isinstance(doc, dict):
                if doc.get("name"):
                    enrichment["collection-name"] = doc["name"]
                enrichment["collection-uri"] = doc.get("uri") or page_uri
                seeds = doc.get("seed_metadata") or {}
                if record.uri_r in seeds:
                    enrichment["seed-metadata"] = seeds[record.uri_r]
    except (SurrogateError, ValueError):
        pass  # enrichment is best-effort
    return enrichment
