"""Imagereel: an animated GIF cycling the top-scoring images."""

from __future__ import annotations

import io
from dataclasses import dataclass

from PIL import Image

from ..errors import ProductUnsupported
from ..image_selection import rank_images
from .frames import (
    FrameEntry,
    FramePlan,
    encode_gif,
    fade_frames,
    letterbox,
    per_frame_delay_ms,
)


@dataclass(frozen=True)
class ImagereelPrefs:
    duration: int = 100  # per-entry display time, centiseconds
    imagecount: int = 5
    width: int = 320
    height: int = 240


def top_image_candidates(record, ctx, count, candidates=None):
    if candidates is None:
        candidates = rank_images(
            record, ctx.fetcher, ctx.weights, ctx.timegate_base, keep_bytes=True
        )
    scored = [c for c in candidates if c.score is not None and c.image_bytes]
    scored.sort(key=lambda c: (-c.score, c.features.n))
    return scored[:count]


def build_imagereel(record, ctx, prefs=ImagereelPrefs(), candidates=None):
    """Returns (gif_bytes, frame_plan). Needs at least two scored images."""
    chosen = top_image_candidates(record, ctx, prefs.imagecount, candidates)
    if len(chosen) < 2:
        raise ProductUnsupported(
            "imagereels need a memento with at least two scorable images"
        )
    entries = tuple(FrameEntry(kind="image", label=c.urim) for c in chosen)
    plan = FramePlan(
        entries=entries,
        width=prefs.width,
        height=prefs.height,
        frame_duration_ms=per_frame_delay_ms(prefs.duration),
    )
    frames = []
    for candidate, entry in zip(chosen, entries):
        with Image.open(io.BytesIO(candidate.image_bytes)) as im:
            im.seek(0)
            boxed = letterbox(im, prefs.width, prefs.height)
        frames.extend(fade_frames(boxed, entry))
    return encode_gif(frames, plan.frame_duration_ms), plan
