"""Prefer-header negotiation.

Each endpoint owns a preference table (name, type, bound, default).
Parsing fills defaults, ignores unknown names, clamps out-of-range
numbers, and produces the applied map echoed verbatim in the
Preference-Applied response header; re-sending that header yields the
same applied set.

remove_banner is special-cased: it enters the applied echo only when
the client asked for it (and then reflects what actually happened),
matching the header exchanges the service is tested against.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..content_analysis import PARAGRAPH_ALGORITHMS, SENTENCE_ALGORITHM_PAIRS
from ..errors import UnknownAlgorithm


@dataclass(frozen=True)
class PrefSpec:
    name: str
    kind: str  # int | yesno | enum | text
    default: object
    maximum: int | None = None
    minimum: int = 1
    choices: tuple = ()
    echo_unrequested: bool = True


ENDPOINT_PREFERENCES = {
    "sentencerank": (
        PrefSpec("algorithm", "enum", "readability/lede3", choices=SENTENCE_ALGORITHM_PAIRS),
    ),
    "paragraphrank": (
        PrefSpec("algorithm", "enum", "readability", choices=PARAGRAPH_ALGORITHMS),
    ),
    "socialcard": (
        PrefSpec("datauri_favicon", "yesno", "no"),
        PrefSpec("datauri_image", "yesno", "no"),
        PrefSpec("using_remote_javascript", "yesno", "yes"),
        PrefSpec("minify_markup", "yesno", "no"),
    ),
    "thumbnail": (
        PrefSpec("viewport_width", "int", 1024, maximum=5120),
        PrefSpec("viewport_height", "int", 768, maximum=2880),
        PrefSpec("thumbnail_width", "int", 208, maximum=5120),
        PrefSpec("thumbnail_height", "int", 156, maximum=2880),
        PrefSpec("timeout", "int", 60, maximum=300),
        PrefSpec("remove_banner", "yesno", "no", echo_unrequested=False),
    ),
    "imagereel": (
        PrefSpec("duration", "int", 100, maximum=300),
        PrefSpec("imagecount", "int", 5, maximum=10),
        PrefSpec("width", "int", 320, maximum=5120),
        PrefSpec("height", "int", 240, maximum=2880),
    ),
    "wordcloud": (
        PrefSpec("colormap", "text", "inferno"),
        PrefSpec("background_color", "text", "white"),
        PrefSpec("textonly", "yesno", "no"),
    ),
    "docreel": (
        PrefSpec("duration", "int", 100, maximum=300),
        PrefSpec("imagecount", "int", 5, maximum=10),
        PrefSpec("sentencecount", "int", 5, maximum=10),
        PrefSpec("width", "int", 320, maximum=5120),
        PrefSpec("height", "int", 240, maximum=2880),
    ),
}


@dataclass
class PreferenceSet:
    endpoint: str
    values: dict  # name -> typed value (ints, bools, strings)
    applied: dict  # name -> echo string, in table order

    def header_value(self):
        return format_applied(self.applied)


def format_applied(applied):
    return ",".join(f"{name}={value}" for name, value in applied.items())


def _parse_tokens(header_value):
    tokens = {}
    for part in (header_value or "").split(","):
        part = part.strip()
        if not part or "=" not in part:
            continue
        name, _, value = part.partition("=")
        tokens[name.strip().lower()] = value.strip().strip('"')
    return tokens


def parse_prefer(header_value, endpoint):
    """Validate a Prefer header against the endpoint's table."""
    specs = ENDPOINT_PREFERENCES.get(endpoint, ())
    requested = _parse_tokens(header_value)
    values, applied = {}, {}
    for spec in specs:
        raw = requested.get(spec.name)
        was_requested = raw is not None
        if spec.kind == "int":
            value = spec.default
            if was_requested:
                try:
                    value = int(raw)
                except ValueError:
                    value = spec.default
                value = max(spec.minimum, value)
                if spec.maximum is not None:
                    value = min(spec.maximum, value)
            values[spec.name] = value
            echo = str(value)
        elif spec.kind == "yesno":
            value = raw if (was_requested and raw in ("yes", "no")) else spec.default
            values[spec.name] = value == "yes"
            echo = value
        elif spec.kind == "enum":
            value = raw if was_requested else spec.default
            if value not in spec.choices:
                raise UnknownAlgorithm(
                    f"{spec.name} must be one of {', '.join(spec.choices)}; got {value!r}"
                )
            values[spec.name] = value
            echo = value
        else:  # text: validated downstream (colormaps, colors)
            value = raw if was_requested and raw else spec.default
            values[spec.name] = value
            echo = value
        if spec.echo_unrequested or was_requested:
            applied[spec.name] = echo
    return PreferenceSet(endpoint=endpoint, values=values, applied=applied)
