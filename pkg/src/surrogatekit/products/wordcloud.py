"""Word cloud rendering.

Font size is linear in term frequency (size = MAX_FONT * count /
max_count, floored at MIN_FONT), placement walks an Archimedean spiral
from the canvas center until a non-overlapping spot is found, and
colors are sampled from a bundled colormap lookup table. Alongside the
PNG we return the layout records so callers (and tests) can inspect the
geometry without rasterizing text back out of pixels.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from PIL import Image, ImageColor, ImageDraw, ImageFont

from ..content_analysis import word_frequencies
from ..errors import UnknownColormap

CANVAS_SIZE = (400, 400)
MAX_TERMS = 50
MAX_FONT = 64
MIN_FONT = 6
SPIRAL_STEP = 0.4
SPIRAL_GROWTH = 1.8
PADDING = 2


@dataclass(frozen=True)
class WordcloudPrefs:
    colormap: str = "inferno"
    background_color: str = "white"
    textonly: bool = False


@lru_cache(maxsize=1)
def _colormap_tables():
    text = resources.files("surrogatekit.data").joinpath("colormaps.json").read_text("utf-8")
    return json.loads(text)


def known_colormaps():
    return sorted(_colormap_tables())


def sample_colormap(name, t):
    """Linear interpolation over the bundled anchor table, t in [0, 1]."""
    tables = _colormap_tables()
    if name not in tables:
        raise UnknownColormap(f"unknown colormap: {name!r}")
    table = tables[name]
    position = min(max(t, 0.0), 1.0) * (len(table) - 1)
    low = int(position)
    high = min(low + 1, len(table) - 1)
    fraction = position - low
    return tuple(
        round(table[low][i] + (table[high][i] - table[low][i]) * fraction)
        for i in range(3)
    )


def parse_color(value):
    try:
        return ImageColor.getrgb(value)
    except ValueError as exc:
        raise UnknownColormap(f"unparseable color: {value!r}") from exc


def _font(size):
    return ImageFont.load_default(size=size)


def _overlaps(rect, placed):
    x0, y0, x1, y1 = rect
    for px0, py0, px1, py1 in placed:
        if x0 < px1 and px0 < x1 and y0 < py1 and py0 < y1:
            return True
    return False


def layout_terms(terms, canvas_size=CANVAS_SIZE):
    """Greedy spiral placement; returns layout records for placed terms."""
    if not terms:
        return []
    width, height = canvas_size
    cx, cy = width / 2, height / 2
    max_count = terms[0][1]
    probe = ImageDraw.Draw(Image.new("RGB", (8, 8)))
    placed_rects = []
    records = []
    total = len(terms)
    for index, (term, count) in enumerate(terms):
        font_size = max(MIN_FONT, round(MAX_FONT * count / max_count))
        font = _font(font_size)
        x0, y0, x1, y1 = probe.textbbox((0, 0), term, font=font)
        text_w, text_h = x1 - x0, y1 - y0
        position = None
        theta = 0.0
        while theta < 220.0:
            radius = SPIRAL_GROWTH * theta
            x = cx + radius * math.cos(theta) - text_w / 2
            y = cy + radius * math.sin(theta) - text_h / 2
            rect = (x - PADDING, y - PADDING, x + text_w + PADDING, y + text_h + PADDING)
            inside = rect[0] >= 0 and rect[1] >= 0 and rect[2] <= width and rect[3] <= height
            if inside and not _overlaps(rect, placed_rects):
                position = (x, y, rect)
                break
            theta += SPIRAL_STEP
        if position is None:
            continue  # canvas full; smaller terms may still fit
        x, y, rect = position
        placed_rects.append(rect)
        records.append(
            {
                "term": term,
                "count": count,
                "font_size": font_size,
                "x": round(x - x0, 1),
                "y": round(y - y0, 1),
                "color_index": index / max(1, total - 1),
            }
        )
    return records


def build_wordcloud(record, ctx=None, prefs=WordcloudPrefs(), stopwords=None):
    """Returns (png_bytes_or_None, layout_records, terms).

    textonly=yes skips rendering and returns terms only (png is None).
    """
    if prefs.colormap not in _colormap_tables():
        raise UnknownColormap(f"unknown colormap: {prefs.colormap!r}")
    background = parse_color(prefs.background_color)
    content, content_type = record.best_content()
    terms = word_frequencies(content, stopwords=stopwords, content_type=content_type)
    terms = terms[:MAX_TERMS]
    if prefs.textonly:
        return None, [], terms
    records = layout_terms(terms)
    im = Image.new("RGB", CANVAS_SIZE, background)
    draw = ImageDraw.Draw(im)
    for entry in records:
        color = sample_colormap(prefs.colormap, entry["color_index"])
        entry["color"] = "#{:02x}{:02x}{:02x}".format(*color)
        draw.text(
            (entry["x"], entry["y"]),
            entry["term"],
            font=_font(entry["font_size"]),
            fill=color,
        )
    buffer = io.BytesIO()
    im.save(buffer, format="PNG")
    return buffer.getvalue(), records, terms
