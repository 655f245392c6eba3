"""Regenerate the bundled default striking image (a wireframe globe).

Run from the repo root:  python scripts/make_default_image.py
"""

import math
import pathlib

from PIL import Image, ImageDraw

SIZE = 256
LINE = (96, 112, 128)
BG = (245, 246, 247)

im = Image.new("RGB", (SIZE, SIZE), BG)
draw = ImageDraw.Draw(im)
cx = cy = SIZE // 2
radius = SIZE // 2 - 12

draw.ellipse([cx - radius, cy - radius, cx + radius, cy + radius], outline=LINE, width=3)
# meridians: ellipses of shrinking horizontal radius
for fraction in (0.33, 0.66):
    rx = int(radius * fraction)
    draw.ellipse([cx - rx, cy - radius, cx + rx, cy + radius], outline=LINE, width=2)
draw.line([cx, cy - radius, cx, cy + radius], fill=LINE, width=2)
# parallels: chords at fixed latitudes
for latitude in (-60, -30, 0, 30, 60):
    y = cy + int(radius * math.sin(math.radians(latitude)))
    half = int(radius * math.cos(math.radians(latitude)))
    draw.line([cx - half, y, cx + half, y], fill=LINE, width=2)

target = pathlib.Path(__file__).resolve().parent.parent / "src/surrogatekit/data/default_globe.png"
im.save(target, format="PNG")
print(f"wrote {target}")
