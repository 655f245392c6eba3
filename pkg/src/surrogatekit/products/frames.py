"""Frame plans and GIF assembly for the reel products.

Every reel entry contributes 10 fade-in frames, 1 full-brightness hold
frame, and 10 fade-out frames (21 per entry), a linear alpha ramp
between black and the content. Alpha steps are chosen so no two
consecutive frames are identical; GIF writers merge duplicate frames,
which would break the frame-count arithmetic.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

from PIL import Image

FADE_IN_FRAMES = 10
HOLD_FRAMES = 1
FADE_OUT_FRAMES = 10
FRAMES_PER_ENTRY = FADE_IN_FRAMES + HOLD_FRAMES + FADE_OUT_FRAMES


@dataclass(frozen=True)
class FrameEntry:
    kind: str  # "image" or "sentence"
    label: str  # source URI or the sentence text
    fade_in_frames: int = FADE_IN_FRAMES
    hold_frames: int = HOLD_FRAMES
    fade_out_frames: int = FADE_OUT_FRAMES

    @property
    def frame_count(self):
        return self.fade_in_frames + self.hold_frames + self.fade_out_frames


@dataclass(frozen=True)
class FramePlan:
    entries: tuple
    width: int
    height: int
    frame_duration_ms: int

    @property
    def total_frames(self):
        return sum(entry.frame_count for entry in self.entries)


def letterbox(image, width, height, background=(0, 0, 0)):
    """Scale preserving aspect ratio and center on a solid canvas."""
    canvas = Image.new("RGB", (width, height), background)
    source = image.convert("RGB")
    scale = min(width / source.width, height / source.height)
    new_size = (max(1, round(source.width * scale)), max(1, round(source.height * scale)))
    resized = source.resize(new_size, Image.LANCZOS)
    canvas.paste(resized, ((width - new_size[0]) // 2, (height - new_size[1]) // 2))
    return canvas


def fade_alphas(entry):
    steps_in = entry.fade_in_frames + 1
    steps_out = entry.fade_out_frames + 1
    return (
        [k / steps_in for k in range(1, entry.fade_in_frames + 1)]
        + [1.0] * entry.hold_frames
        + [k / steps_out for k in range(entry.fade_out_frames, 0, -1)]
    )


def fade_frames(full_frame, entry):
    """Blend the full-brightness frame against black per the fade plan."""
    black = Image.new("RGB", full_frame.size, (0, 0, 0))
    for alpha in fade_alphas(entry):
        yield full_frame if alpha >= 1.0 else Image.blend(black, full_frame, alpha)


def per_frame_delay_ms(duration_preference, frames_per_entry=FRAMES_PER_ENTRY):
    """Per-entry display time (centiseconds) spread across its frames."""
    return max(10, round(duration_preference * 10 / frames_per_entry))


def encode_gif(frames, delay_ms):
    """GIF89a with a uniform per-frame delay."""
    first, *rest = frames
    buffer = io.BytesIO()
    first.save(
        buffer,
        format="GIF",
        save_all=True,
        append_images=rest,
        duration=delay_ms,
        loop=0,
        optimize=False,
    )
    return buffer.getvalue()
