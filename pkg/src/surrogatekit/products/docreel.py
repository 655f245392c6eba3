"""Docreel: an animated GIF interleaving top images and top sentences.

Every frame carries an attribution overlay: original domain, archive
domain, both favicons, and the memento-datetime. Generation can be slow
for image-heavy mementos, so builds respect a caller-supplied deadline.
"""

from __future__ import annotations

import io
import textwrap
import time
from dataclasses import dataclass

from PIL import Image, ImageDraw, ImageFont

from ..content_analysis import rank_sentences
from ..errors import ProductUnsupported, RenderTimeout, SurrogateError
from ..favicon_discovery import archive_home_uri, discover_archive_favicon, discover_original_favicon
from ..memento_client import format_http_datetime
from .frames import FrameEntry, FramePlan, encode_gif, fade_frames, letterbox, per_frame_delay_ms
from .imagereel import top_image_candidates

SENTENCE_FONT_SIZE = 16
OVERLAY_FONT_SIZE = 11
OVERLAY_TEXT_COLOR = (255, 255, 255)
OVERLAY_BAR_COLOR = (32, 32, 32)
FAVICON_EDGE = 14


@dataclass(frozen=True)
class DocreelPrefs:
    duration: int = 100
    imagecount: int = 5
    sentencecount: int = 5
    width: int = 320
    height: int = 240


def _sentence_canvas(text, width, height):
    im = Image.new("RGB", (width, height), (0, 0, 0))
    draw = ImageDraw.Draw(im)
    font = ImageFont.load_default(size=SENTENCE_FONT_SIZE)
    chars_per_line = max(10, width // (SENTENCE_FONT_SIZE // 2 + 2))
    lines = textwrap.wrap(text, width=chars_per_line) or [""]
    line_height = SENTENCE_FONT_SIZE + 4
    block_height = line_height * len(lines)
    y = max(8, (height - block_height) // 2)
    for line in lines:
        bbox = draw.textbbox((0, 0), line, font=font)
        x = max(4, (width - (bbox[2] - bbox[0])) // 2)
        draw.text((x, y), line, font=font, fill=(235, 235, 235))
        y += line_height
    return im


def _favicon_image(fetcher, uri):
    if not uri:
        return None
    try:
        response = fetcher.fetch(uri)
    except SurrogateError:
        return None
    if not response.ok:
        return None
    try:
        with Image.open(io.BytesIO(response.body)) as im:
            im.seek(0)
            return im.convert("RGB").resize((FAVICON_EDGE, FAVICON_EDGE))
    except Exception:
        return None


def _apply_overlay(frame, overlay):
    """Attribution bars burned into one frame (constant across the fade)."""
    draw = ImageDraw.Draw(frame)
    font = ImageFont.load_default(size=OVERLAY_FONT_SIZE)
    bar = OVERLAY_FONT_SIZE + 8
    width, height = frame.size
    draw.rectangle([0, 0, width, bar], fill=OVERLAY_BAR_COLOR)
    draw.rectangle([0, height - bar, width, height], fill=OVERLAY_BAR_COLOR)
    x = 4
    if overlay["original_favicon_image"] is not None:
        frame.paste(overlay["original_favicon_image"], (x, (bar - FAVICON_EDGE) // 2))
        x += FAVICON_EDGE + 4
    draw.text((x, 4), overlay["top_text"], font=font, fill=OVERLAY_TEXT_COLOR)
    x = 4
    if overlay["archive_favicon_image"] is not None:
        frame.paste(
            overlay["archive_favicon_image"], (x, height - bar + (bar - FAVICON_EDGE) // 2)
        )
        x += FAVICON_EDGE + 4
    draw.text((x, height - bar + 4), overlay["bottom_text"], font=font, fill=OVERLAY_TEXT_COLOR)
    return frame


def build_docreel(record, ctx, prefs=DocreelPrefs(), deadline_seconds=None, candidates=None):
    """Returns (gif_bytes, frame_plan, overlay_records)."""
    started = time.monotonic()

    def check_deadline(stage):
        if deadline_seconds is not None and time.monotonic() - started > deadline_seconds:
            raise RenderTimeout(f"docreel generation exceeded deadline during {stage}")

    images = top_image_candidates(record, ctx, prefs.imagecount, candidates)
    check_deadline("image ranking")
    content, content_type = record.best_content()
    sentences, _, _ = rank_sentences(content, "readability/lede3", content_type=content_type)
    top_sentences = sorted(
        (s for s in sentences if s.rank <= prefs.sentencecount), key=lambda s: s.rank
    )
    if not images and not top_sentences:
        raise ProductUnsupported("docreels need images or sentences to show")
    if len(images) + len(top_sentences) < 2:
        raise ProductUnsupported("docreels need at least two content entries")

    archive_fav = discover_archive_favicon(
        archive_home_uri(record.urim), ctx.fetcher, ctx.favicon_resolver
    )
    original_fav = discover_original_favicon(
        record, ctx.fetcher, ctx.favicon_resolver, ctx.timegate_base
    )
    overlay = {
        "top_text": f"{record.original_domain}  {format_http_datetime(record.memento_datetime)}",
        "bottom_text": record.archive_domain,
        "original_domain": record.original_domain,
        "archive_domain": record.archive_domain,
        "memento_datetime": format_http_datetime(record.memento_datetime),
        "original_favicon": original_fav.uri,
        "archive_favicon": archive_fav.uri,
        "original_favicon_image": _favicon_image(ctx.fetcher, original_fav.uri),
        "archive_favicon_image": _favicon_image(ctx.fetcher, archive_fav.uri),
    }
    check_deadline("favicon discovery")

    # interleave images and sentences in rank order
    entries, sources = [], []
    image_queue = list(images)
    sentence_queue = list(top_sentences)
    while image_queue or sentence_queue:
        if image_queue:
            candidate = image_queue.pop(0)
            entries.append(FrameEntry(kind="image", label=candidate.urim))
            sources.append(("image", candidate))
        if sentence_queue:
            sentence = sentence_queue.pop(0)
            entries.append(FrameEntry(kind="sentence", label=sentence.text))
            sources.append(("sentence", sentence))

    plan = FramePlan(
        entries=tuple(entries),
        width=prefs.width,
        height=prefs.height,
        frame_duration_ms=per_frame_delay_ms(prefs.duration),
    )
    frames = []
    for (kind, source), entry in zip(sources, entries):
        check_deadline("frame composition")
        if kind == "image":
            with Image.open(io.BytesIO(source.image_bytes)) as im:
                im.seek(0)
                base = letterbox(im, prefs.width, prefs.height)
        else:
            base = _sentence_canvas(source.text, prefs.width, prefs.height)
        for frame in fade_frames(base, entry):
            frames.append(_apply_overlay(frame.copy(), overlay))
    overlay_records = {
        key: overlay[key]
        for key in (
            "original_domain", "archive_domain", "memento_datetime",
            "original_favicon", "archive_favicon", "top_text", "bottom_text",
        )
    }
    return encode_gif(frames, plan.frame_duration_ms), plan, overlay_records
