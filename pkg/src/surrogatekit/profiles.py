"""Archive knowledge as configuration.

Eash profile describes one archive family's URI conventions: how to
rewrite a URI-M into its raw (unaugmented) or banner-free form, and
whether the path carries a collection id segment. Profiles load from a
JSON file so new archives need no code change; the shipped default
covers Wayback-style archives (``im_`` raw flavor, ``if_`` banner-free).

Config file format (JSON)::

    {"profiles": [
        {"name": "wayback",
         "domain_pattern": "*",
         "raw_token": "im_",
         "banner_free_token": "if_",
         "collection_path": false,
         "display_name": null}
    ]}

The only rewrite rule kind is datetime-flavor insertion: the token is
inserted immediately after the 14-digit datetime path segment.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fnmatch import fnmatch
from urllib.parse import urlsplit

_DT14_SEGMENT = re.compile(r"/(\d{14})(?=/)")


@dataclass(frozen=True)
class ArchiveProfile:
    name: str
    domain_pattern: str = "*"
    raw_token: str = "im_"
    banner_free_token: str | None = "if_"
    collection_path: bool = False
    display_name: str | None = None

    def matches(self, urim):
        host = (urlsplit(urim).hostname or "").lower()
        return fnmatch(host, self.domain_pattern.lower())

    def _rewrite(self, urim, token):
        if token and f"{token}/" in urim and re.search(
            r"/\d{14}" + re.escape(token) + "/", urim
        ):
            return urim  # token already present: idempotent
        rewritten, count = _DT14_SEGMENT.subn(r"/\g<1>" + token, urim, count=1)
        return rewritten if count else None

    def raw_urim(self, urim):
        return self._rewrite(urim, self.raw_token)

    def banner_free_urim(self, urim):
        if not self.banner_free_token:
            return None
        return self._rewrite(urim, self.banner_free_token)

    def collection_id(self, urim):
        """Archive-It style collection segment: /<digits>/<dt14>/..."""
        if not self.collection_path:
            return None
        m = re.search(r"/(\d+)/\d{14}", urim)
        return m.group(1) if m else None


DEFAULT_PROFILES = (
    ArchiveProfile(
        name="archive-it",
        domain_pattern="*archive-it.org",
        collection_path=True,
    ),
    ArchiveProfile(name="wayback", domain_pattern="*"),
)


def load_profiles(path=None):
    """Profiles from a JSON config file, or the shipped defaults."""
    if path is None:
        return list(DEFAULT_PROFILES)
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    profiles = []
    for entry in doc.get("profiles", []):
        profiles.append(
            ArchiveProfile(
                name=entry["name"],
                domain_pattern=entry.get("domain_pattern", "*"),
                raw_token=entry.get("raw_token", "im_"),
                banner_free_token=entry.get("banner_free_token"),
                collection_path=bool(entry.get("collection_path", False)),
                display_name=entry.get("display_name"),
            )
        )
    return profiles


def first_matching(urim, profiles):
    for profile in profiles:
        if profile.matches(urim):
            return profile
    return None
