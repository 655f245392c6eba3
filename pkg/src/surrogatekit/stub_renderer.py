"""Deterministic test-pattern screenshot backend.

Satisfies the renderer command contract without a browser: given a URI
and viewport dimensions it writes a PNG test pattern to stdout. The
pattern is a function of the URI alone, so repeated renders are
byte-identical.

Usage: python -m surrogatekit.stub_renderer <uri> <width> <height>
"""

import hashlib
import io
import sys

from PIL import Image, ImageDraw


def test_pattern(uri, width, height):
    digest = hashlib.sha256(uri.encode("utf-8")).digest()
    base = (digest[0], digest[1], digest[2])
    im = Image.new("RGB", (width, height), base)
    draw = ImageDraw.Draw(im)
    # horizontal gradient bands keyed off the digest
    for band in range(8):
        shade = tuple((c + digest[3 + band] * (band + 1)) % 256 for c in base)
        top = band * height // 8
        draw.rectangle([0, top, width, (band + 1) * height // 8], fill=shade)
    # grid for visual scale
    for x in range(0, width, 64):
        draw.line([x, 0, x, height], fill=(255, 255, 255), width=1)
    for y in range(0, height, 64):
        draw.line([0, y, width, y], fill=(255, 255, 255), width=1)
    draw.rectangle([0, 0, width - 1, height - 1], outline=(0, 0, 0), width=2)
    return im


def main(argv=None):
    argv = argv if argv is not None else sys.argv[1:]
    if len(argv) != 3:
        print("usage: stub_renderer <uri> <width> <height>", file=sys.stderr)
        return 2
    uri, width, height = argv[0], int(argv[1]), int(argv[2])
    buffer = io.BytesIO()
    test_pattern(uri, width, height).save(buffer, format="PNG")
    sys.stdout.buffer.write(buffer.getvalue())
    return 0


if __name__ == "__main__":
    sys.exit(main())
