"""Small lenient HTML document model built on html.parser.

Archived pages are frequently malformed, so parsing never raises: stray
end tags are dropped, unclosed elements are closed when an ancestor
closes, and undecodable bytes are replaced. The model is the minimum the
extractors need: tag names, attributes, children, and text.
"""

from __future__ import annotations

import re
from html.parser import HTMLParser

VOID_TAGS = frozenset(
    "area base br col embed hr img input link meta param source track wbr".split()
)

_WS = re.compile(r"\s+")
_CHARSET_META = re.compile(
    rb"""<meta[^>]+charset\s*=\s*["']?\s*([A-Za-z0-9_\-:.]+)""", re.IGNORECASE
)
_CHARSET_PARAM = re.compile(r"charset\s*=\s*([A-Za-z0-9_\-:.]+)", re.IGNORECASE)


def collapse_ws(text):
    return _WS.sub(" ", text).strip()


class Node:
    """One element; the document root uses the pseudo-tag 'document'."""

    __slots__ = ("tag", "attrs", "children", "parent")

    def __init__(self, tag, attrs=None, parent=None):
        self.tag = tag
        self.attrs = attrs or {}
        self.children = []  # Node or str (text) in document order
        self.parent = parent

    def __repr__(self):
        return f"<Node {self.tag} attrs={self.attrs!r} children={len(self.children)}>"

    def iter(self):
        """All element descendants, self first, document order."""
        yield self
        for child in self.children:
            if isinstance(child, Node):
                yield from child.iter()

    def find_all(self, *tags):
        wanted = {t.lower() for t in tags}
        return [n for n in self.iter() if n.tag in wanted and n is not self]

    def find(self, *tags):
        found = self.find_all(*tags)
        return found[0] if found else None

    def get(self, name, default=None):
        return self.attrs.get(name.lower(), default)

    def text(self, separator=" "):
        """Concatenated descendant text, whitespace-collapsed."""
        parts = []
        self._collect_text(parts)
        return collapse_ws(separator.join(parts))

    def _collect_text(self, parts):
        for child in self.children:
            if isinstance(child, str):
                parts.append(child)
            else:
                child._collect_text(parts)

    def own_text(self):
        """Text of direct string children only."""
        return collapse_ws(" ".join(c for c in self.children if isinstance(c, str)))

    def has_descendant(self, tags):
        wanted = {t.lower() for t in tags}
        for n in self.iter():
            if n is not self and n.tag in wanted:
                return True
        return False


class _TreeBuilder(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.root = Node("document")
        self.stack = [self.root]

    def handle_starttag(self, tag, attrs):
        node = Node(tag, {k.lower(): (v or "") for k, v in attrs}, self.stack[-1])
        self.stack[-1].children.append(node)
        if tag not in VOID_TAGS:
            self.stack.append(node)

    def handle_startendtag(self, tag, attrs):
        node = Node(tag, {k.lower(): (v or "") for k, v in attrs}, self.stack[-1])
        self.stack[-1].children.append(node)

    def handle_endtag(self, tag):
        # close up to the nearest matching open tag; ignore strays
        for i in range(len(self.stack) - 1, 0, -1):
            if self.stack[i].tag == tag:
                del self.stack[i:]
                return

    def handle_data(self, data):
        if data:
            self.stack[-1].children.append(data)


def sniff_charset(raw, content_type=None):
    """Charset priority: Content-Type param, meta charset, UTF-8."""
    if content_type:
        m = _CHARSET_PARAM.search(content_type)
        if m:
            return m.group(1)
    m = _CHARSET_META.search(raw[:4096])
    if m:
        return m.group(1).decode("ascii", "replace")
    return "utf-8"


def decode_html(raw, content_type=None):
    if isinstance(raw, str):
        return raw
    charset = sniff_charset(raw, content_type)
    try:
        return raw.decode(charset, errors="replace")
    except LookupError:
        return raw.decode("utf-8", errors="replace")


def parse_html(raw, content_type=None):
    """Parse bytes or text into a document Node. Never raises."""
    text = decode_html(raw, content_type)
    builder = _TreeBuilder()
    try:
        builder.feed(text)
        builder.close()
    except Exception:
        pass  # keep whatever tree was built before the parser choked
    return builder.root


def meta_content(root, *keys):
    """First META content whose name/property/itemprop matches a key.

    Keys are tried in order; within one key, document order wins.
    """
    metas = root.find_all("meta")
    for key in keys:
        key = key.lower()
        for node in metas:
            for attr in ("property", "name", "itemprop"):
                if (node.get(attr) or "").strip().lower() == key:
                    content = node.get("content")
                    if content and content.strip():
                        return content.strip()
    return None
