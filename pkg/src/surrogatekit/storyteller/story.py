"""Story input files.

Two formats: a JSON object with an ``elements`` list (typed link/text
entries plus optional story-level fields), or a newline-separated list
of URI-Ms. The newline form carries no title, so one must arrive from
the command line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from urllib.parse import urlsplit


class StoryParseError(ValueError):
    pass


@dataclass(frozen=True)
class StoryElement:
    kind: str  # "link" | "text"
    value: str


@dataclass
class Story:
    title: str
    elements: list = field(default_factory=list)
    collection_url: str | None = None
    generated_by: str | None = None
    metadata: dict = field(default_factory=dict)

    def link_elements(self):
        return [e for e in self.elements if e.kind == "link"]


def _require_absolute(value, where):
    parts = urlsplit(value)
    if parts.scheme not in ("http", "https") or not parts.netloc:
        raise StoryParseError(f"{where}: not an absolute URI: {value!r}")


def parse_story_file(data, title_override=None):
    """Parse story bytes; title_override (the --title flag) wins when given."""
    if isinstance(data, bytes):
        text = data.decode("utf-8")
    else:
        text = data
    stripped = text.strip()
    doc = None
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise StoryParseError(f"story file looks like JSON but does not parse: {exc}")
    if isinstance(doc, dict) and "elements" in doc:
        return _parse_json_story(doc, title_override)
    return _parse_newline_story(text, title_override)


def _parse_json_story(doc, title_override):
    elements = []
    for position, entry in enumerate(doc.get("elements") or []):
        kind = entry.get("type")
        if kind not in ("link", "text"):
            raise StoryParseError(f"element {position}: unknown element type {kind!r}")
        value = entry.get("value", "")
        if kind == "link":
            _require_absolute(value, f"element {position}")
        elements.append(StoryElement(kind=kind, value=value))
    if not elements:
        raise StoryParseError("no story elements")
    title = title_override or doc.get("title") or ""
    if not title:
        raise StoryParseError("story has no title: add a \"title\" field or pass --title")
    return Story(
        title=title,
        elements=elements,
        collection_url=doc.get("collection_url"),
        generated_by=doc.get("generated_by"),
        metadata=doc.get("metadata") or {},
    )


def _parse_newline_story(text, title_override):
    elements = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        _require_absolute(line, f"line {line_number}")
        elements.append(StoryElement(kind="link", value=line))
    if not elements:
        raise StoryParseError("no story elements")
    if not title_override:
        raise StoryParseError("newline story files carry no title: pass --title")
    return Story(title=title_override, elements=elements)
