"""Regenerate the bundled colormap lookup tables from matplotlib.

Run from the repo root:  python scripts/make_colormaps.py
Writes src/surrogatekit/data/colormaps.json (64 RGB anchors per map) so
the runtime never imports matplotlib.
"""

import json
import pathlib

import matplotlib

NAMES = [
    "inferno", "viridis", "plasma", "magma", "cividis",
    "gray", "hot", "cool", "spring", "summer", "autumn", "winter",
    "rainbow", "jet", "bone", "copper",
]
ANCHORS = 64

out = {}
for name in NAMES:
    cmap = matplotlib.colormaps[name]
    table = []
    for i in range(ANCHORS):
        r, g, b, _ = cmap(i / (ANCHORS - 1))
        table.append([round(r * 255), round(g * 255), round(b * 255)])
    out[name] = table

target = pathlib.Path(__file__).resolve().parent.parent / "src/surrogatekit/data/colormaps.json"
target.write_text(json.dumps(out), encoding="utf-8")
print(f"wrote {target} ({len(out)} colormaps)")
