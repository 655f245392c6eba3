"""The story template language.

Syntax (the full grammar the engine accepts)::

    {{ path }}                              variable substitution
    {{ path|prefer name=value,name=value }} variable with endpoint preferences
    {# comment #}                           comments; multipart markers live here
    {% if condition %} ... {% elif c %} ... {% else %} ... {% endif %}
    {% for element in elements %} ... {% endfor %}

    condition := [not] path
               | path == "literal"   | path != "literal"
               | path % N == M                      (loop column breaks)

Paths are dotted names. Outside a loop the story fields are available
(``title``, ``generated_by``, ``collection_url``, ``metadata.<key>``);
inside ``{% for element in elements %}`` each element exposes
``element.type``, ``element.text``, the surrogate vocabulary
(``element.surrogate.*``, ``element.thumbnail``), and loop counters
(``loop.index``, ``loop.index0``, ``loop.first``, ``loop.last``).

A multipart template starts with the comment marker ``RAINTALE
MULTIPART TEMPLATE`` and contains, in order, the markers ``RAINTALE
TITLE PART``, ``RAINTALE ELEMENT PART``, and ``RAINTALE ELEMENT
MEDIA``; each marker opens one of the three parts.

Unknown variable paths are parse errors: rendering fails closed rather
than emitting a story with silently empty holes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

MULTIPART_MARKER = "RAINTALE MULTIPART TEMPLATE"
TITLE_MARKER = "RAINTALE TITLE PART"
ELEMENT_MARKER = "RAINTALE ELEMENT PART"
MEDIA_MARKER = "RAINTALE ELEMENT MEDIA"

_TOKEN = re.compile(r"({{.*?}}|{%.*?%}|{#.*?#})", re.DOTALL)
_PATH = re.compile(r"^[A-Za-z_][\w-]*(\.[A-Za-z_][\w-]*)*$")


class TemplateParseError(ValueError):
    def __init__(self, message, line=None):
        location = f" (line {line})" if line else ""
        super().__init__(f"{message}{location}")
        self.line = line


@dataclass(frozen=True)
class TextNode:
    text: str


@dataclass(frozen=True)
class VarNode:
    path: str
    prefer: tuple = ()  # ((name, value), ...)
    line: int = 0


@dataclass(frozen=True)
class Condition:
    kind: str  # truth | not | eq | ne | mod
    path: str
    literal: str | None = None
    modulo: int = 0
    remainder: int = 0


@dataclass(frozen=True)
class IfNode:
    branches: tuple  # ((Condition | None, nodes), ...); None = else


@dataclass(frozen=True)
class ForNode:
    body: tuple
    line: int = 0


@dataclass(frozen=True)
class Template:
    kind: str  # "single" | "multipart"
    nodes: tuple = ()
    title_part: tuple = ()
    element_part: tuple = ()
    media_part: tuple = ()

    def variable_paths(self):
        paths = []

        def walk(nodes):
            for node in nodes:
                if isinstance(node, VarNode):
                    paths.append(node.path)
                elif isinstance(node, IfNode):
                    for _, body in node.branches:
                        walk(body)
                elif isinstance(node, ForNode):
                    walk(node.body)

        for part in (self.nodes, self.title_part, self.element_part, self.media_part):
            walk(part)
        return paths


STORY_PATHS = {"title", "generated_by", "collection_url", "metadata"}
ELEMENT_PATHS = {"element.type", "element.text", "element.thumbnail"}
LOOP_PATHS = {"loop.index", "loop.index0", "loop.first", "loop.last"}


def _default_vocabulary():
    from .bindings import SURROGATE_FIELDS

    return frozenset(
        STORY_PATHS
        | ELEMENT_PATHS
        | LOOP_PATHS
        | {f"element.surrogate.{name}" for name in SURROGATE_FIELDS}
    )


def _validate_path(path, vocabulary, line):
    if path in vocabulary:
        return
    if path.startswith("metadata.") and _PATH.match(path):
        return
    raise TemplateParseError(f"unknown variable path {path!r}", line)


class _Tokens:
    def __init__(self, text):
        self.items = []  # (kind, value, line)
        line = 1
        for chunk in _TOKEN.split(text):
            if not chunk:
                continue
            if chunk.startswith("{{") and chunk.endswith("}}"):
                self.items.append(("var", chunk[2:-2].strip(), line))
            elif chunk.startswith("{%") and chunk.endswith("%}"):
                self.items.append(("block", chunk[2:-2].strip(), line))
            elif chunk.startswith("{#") and chunk.endswith("#}"):
                self.items.append(("comment", chunk[2:-2].strip(), line))
            else:
                self.items.append(("text", chunk, line))
            line += chunk.count("\n")
        self.position = 0

    def peek(self):
        return self.items[self.position] if self.position < len(self.items) else None

    def next(self):
        item = self.peek()
        if item is not None:
            self.position += 1
        return item


def _parse_prefer(args_text, line):
    prefs = []
    for pair in args_text.split(","):
        pair = pair.strip()
        if not pair:
            continue
        if "=" not in pair:
            raise TemplateParseError(f"bad prefer argument {pair!r}", line)
        name, _, value = pair.partition("=")
        prefs.append((name.strip(), value.strip()))
    return tuple(prefs)


def _parse_var(body, line, vocabulary):
    if "|" in body:
        path_part, _, filter_part = body.partition("|")
        path = path_part.strip()
        filter_part = filter_part.strip()
        if not filter_part.startswith("prefer"):
            raise TemplateParseError(f"unknown filter in {{{{ {body} }}}}", line)
        prefer = _parse_prefer(filter_part[len("prefer"):].strip(), line)
    else:
        path, prefer = body.strip(), ()
    if not _PATH.match(path):
        raise TemplateParseError(f"malformed variable path {path!r}", line)
    _validate_path(path, vocabulary, line)
    return VarNode(path=path, prefer=prefer, line=line)


def _parse_condition(text, line, vocabulary):
    text = text.strip()
    negated = False
    if text.startswith("not "):
        negated = True
        text = text[4:].strip()
    mod_match = re.match(r"^([\w.\-]+)\s*%\s*(\d+)\s*==\s*(\d+)$", text)
    if mod_match:
        path, modulo, remainder = mod_match.groups()
        _validate_path(path, vocabulary, line)
        return Condition(
            kind="mod", path=path, modulo=int(modulo), remainder=int(remainder)
        )
    cmp_match = re.match(r"""^([\w.\-]+)\s*(==|!=)\s*(['"])(.*?)\3$""", text)
    if cmp_match:
        path, op, _, literal = cmp_match.groups()
        _validate_path(path, vocabulary, line)
        return Condition(kind="eq" if op == "==" else "ne", path=path, literal=literal)
    if not _PATH.match(text):
        raise TemplateParseError(f"cannot parse condition {text!r}", line)
    _validate_path(text, vocabulary, line)
    return Condition(kind="not" if negated else "truth", path=text)


def _parse_nodes(tokens, vocabulary, until=()):
    """Parse until one of the `until` block keywords; returns (nodes, stopper)."""
    nodes = []
    while True:
        item = tokens.peek()
        if item is None:
            if until:
                raise TemplateParseError(
                    f"unclosed block: expected {' or '.join(until)}"
                )
            return tuple(nodes), None
        kind, value, line = item
        if kind == "text":
            tokens.next()
            nodes.append(TextNode(text=value))
        elif kind == "comment":
            tokens.next()  # markers are handled by the splitter; others ignored
        elif kind == "var":
            tokens.next()
            nodes.append(_parse_var(value, line, vocabulary))
        else:  # block
            keyword = value.split(None, 1)[0] if value else ""
            if keyword in until:
                return tuple(nodes), value
            tokens.next()
            if keyword == "if":
                nodes.append(_parse_if(value, line, tokens, vocabulary))
            elif keyword == "for":
                nodes.append(_parse_for(value, line, tokens, vocabulary))
            else:
                raise TemplateParseError(f"unknown block {{% {value} %}}", line)


def _parse_if(header, line, tokens, vocabulary):
    condition = _parse_condition(header[len("if"):], line, vocabulary)
    branches = []
    body, stopper = _parse_nodes(tokens, vocabulary, until=("elif", "else", "endif"))
    branches.append((condition, body))
    while stopper and stopper.split(None, 1)[0] == "elif":
        stop_line = tokens.peek()[2]
        tokens.next()
        next_condition = _parse_condition(stopper[len("elif"):], stop_line, vocabulary)
        body, stopper = _parse_nodes(tokens, vocabulary, until=("elif", "else", "endif"))
        branches.append((next_condition, body))
    if stopper == "else":
        tokens.next()
        body, stopper = _parse_nodes(tokens, vocabulary, until=("endif",))
        branches.append((None, body))
    if stopper != "endif":
        raise TemplateParseError("unterminated {% if %}", line)
    tokens.next()  # consume endif
    return IfNode(branches=tuple(branches))


def _parse_for(header, line, tokens, vocabulary):
    match = re.match(r"^for\s+element\s+in\s+elements$", header.strip())
    if not match:
        raise TemplateParseError(
            "loops must read {% for element in elements %}", line
        )
    body, stopper = _parse_nodes(tokens, vocabulary, until=("endfor",))
    if stopper != "endfor":
        raise TemplateParseError("unterminated {% for %}", line)
    tokens.next()
    return ForNode(body=body, line=line)


def _split_multipart(text):
    """Partition source text into the three marker-delimited parts."""
    marker_pattern = re.compile(
        r"{#\s*(" + "|".join(
            re.escape(m) for m in (TITLE_MARKER, ELEMENT_MARKER, MEDIA_MARKER)
        ) + r")\s*#}"
    )
    found = [(m.group(1), m.start(), m.end()) for m in marker_pattern.finditer(text)]
    names = [name for name, _, _ in found]
    if names != [TITLE_MARKER, ELEMENT_MARKER, MEDIA_MARKER]:
        raise TemplateParseError(
            "multipart templates need the TITLE, ELEMENT, and MEDIA markers in order; "
            f"found {names or 'none'}"
        )
    (_, _, title_start), (_, element_at, element_start), (_, media_at, media_start) = found
    return (
        text[title_start:element_at],
        text[element_start:media_at],
        text[media_start:],
    )


def parse_template(text, vocabulary=None):
    vocabulary = vocabulary or _default_vocabulary()
    if re.search(r"{#\s*" + re.escape(MULTIPART_MARKER) + r"\s*#}", text):
        title_text, element_text, media_text = _split_multipart(text)
        title_part, _ = _parse_nodes(_Tokens(title_text), vocabulary)
        element_part, _ = _parse_nodes(_Tokens(element_text), vocabulary)
        media_part, _ = _parse_nodes(_Tokens(media_text), vocabulary)
        return Template(
            kind="multipart",
            title_part=title_part,
            element_part=element_part,
            media_part=media_part,
        )
    nodes, _ = _parse_nodes(_Tokens(text), vocabulary)
    return Template(kind="single", nodes=nodes)
