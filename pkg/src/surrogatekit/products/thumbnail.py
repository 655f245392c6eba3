"""Browser thumbnails via a pluggable screenshot backend.

The backend contract is an external command: it receives the URI and
viewport dimensions, writes PNG bytes to stdout, and exits nonzero on
failure. The bundled stub renderer satisfies the contract without a
browser; a real headless-browser adapter is any command that does the
same.
"""

from __future__ import annotations

import io
import shlex
import subprocess
from dataclasses import dataclass

from PIL import Image

from ..errors import RendererUnavailable, RenderTimeout
from ..memento_client import derive_banner_free_urim

STUB_RENDERER_COMMAND = "{python} -m surrogatekit.stub_renderer {uri} {width} {height}"


@dataclass(frozen=True)
class ThumbnailPrefs:
    viewport_width: int = 1024
    viewport_height: int = 768
    thumbnail_width: int = 208
    thumbnail_height: int = 156
    timeout: int = 60
    remove_banner: bool = False


class CommandRenderer:
    """Runs a command template with {uri} {width} {height} placeholders."""

    def __init__(self, command_template=None):
        if command_template is None:
            import sys

            command_template = STUB_RENDERER_COMMAND.replace("{python}", sys.executable)
        self.command_template = command_template

    def render(self, uri, width, height, timeout):
        command = [
            part.format(uri=uri, width=width, height=height)
            for part in shlex.split(self.command_template)
        ]
        try:
            completed = subprocess.run(
                command, capture_output=True, timeout=timeout
            )
        except subprocess.TimeoutExpired as exc:
            raise RenderTimeout(f"renderer exceeded {timeout}s for {uri}") from exc
        except OSError as exc:
            raise RendererUnavailable(f"cannot execute renderer: {exc}") from exc
        if completed.returncode != 0:
            stderr = completed.stderr.decode("utf-8", "replace")[:500]
            raise RendererUnavailable(
                f"renderer exited {completed.returncode}: {stderr}"
            )
        return completed.stdout


def render_thumbnail(urim, prefs, renderer, profiles=()):
    """Screenshot scaled to the thumbnail dimensions.

    Returns (png_bytes, applied_prefs): when remove_banner was requested
    but the archive has no banner-free flavor, the echoed prefs flip it
    back to False so clients see actual behavior.
    """
    target = urim
    applied = prefs
    if prefs.remove_banner:
        banner_free = derive_banner_free_urim(urim, profiles)
        if banner_free:
            target = banner_free
        else:
            applied = ThumbnailPrefs(
                viewport_width=prefs.viewport_width,
                viewport_height=prefs.viewport_height,
                thumbnail_width=prefs.thumbnail_width,
                thumbnail_height=prefs.thumbnail_height,
                timeout=prefs.timeout,
                remove_banner=False,
            )
    if renderer is None:
        raise RendererUnavailable("no screenshot backend configured")
    png = renderer.render(
        target, prefs.viewport_width, prefs.viewport_height, prefs.timeout
    )
    try:
        with Image.open(io.BytesIO(png)) as im:
            scaled = im.convert("RGB").resize(
                (prefs.thumbnail_width, prefs.thumbnail_height), Image.LANCZOS
            )
    except Exception as exc:
        raise RendererUnavailable(f"renderer produced undecodable output: {exc}") from exc
    buffer = io.BytesIO()
    scaled.save(buffer, format="PNG")
    return buffer.getvalue(), applied
