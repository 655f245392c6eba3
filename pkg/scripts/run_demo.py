"""End-to-end demo: mock archive + service + tellstory, no network.

Run from the repo root:  python scripts/run_demo.py
Writes demo_output/demo_story.html, a social card, and an imagereel.
"""

import io
import json
import pathlib
import sys
import threading

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

import requests
from PIL import Image

from surrogatekit.api_service import ServiceConfig
from surrogatekit.api_service.service import SurrogateService
from surrogatekit.mock_archive import MockArchiveServer
from surrogatekit.storyteller.cli import main as tellstory_main

SITE = "http://demo-site.example/"


def stripe_png(width, height, seed):
    im = Image.new("RGB", (width, height))
    pixels = im.load()
    for x in range(width):
        band = (37 * seed + 61 * (x * 6 // width)) % 256
        for y in range(height):
            pixels[x, y] = (band, (band * 3 + 40) % 256, (255 - band) % 256)
    buffer = io.BytesIO()
    im.save(buffer, format="PNG")
    return buffer.getvalue()


def demo_manifest():
    import base64

    images = [(f"img{i}.png", 400 - 40 * i, 300 - 30 * i) for i in range(4)]
    tags = "".join(f'<img src="{SITE}{name}">' for name, _, _ in images)
    body = f"""<html><head><title>Demo Page</title></head><body>
<p>This demonstration page stands in for an archived news article. It carries
enough prose for the snippet extractor to find a description worth showing.</p>
<p>A second paragraph keeps the sentence ranker busy and fills the word cloud
with terms beyond the bare minimum.</p>
{tags}
</body></html>"""
    return {
        "originals": [
            {
                "uri_r": SITE,
                "captures": [
                    {
                        "datetime14": "20150401120000",
                        "content_type": "text/html",
                        "body": body,
                        "resources": [
                            {
                                "uri_r": f"{SITE}{name}",
                                "content_type": "image/png",
                                "body_base64": base64.b64encode(
                                    stripe_png(width, height, seed=i)
                                ).decode(),
                            }
                            for i, (name, width, height) in enumerate(images)
                        ],
                    }
                ],
            }
        ]
    }


def main():
    out_dir = pathlib.Path("demo_output")
    out_dir.mkdir(exist_ok=True)

    archive = MockArchiveServer(demo_manifest()).start()
    config = ServiceConfig(port=0, timegate_base=f"{archive.base_url}/timegate")
    service = SurrogateService(config)
    server = service.make_server()
    threading.Thread(target=server.serve_forever, daemon=True).start()
    api = config.base_url()
    urim = f"{archive.base_url}/web/20150401120000/{SITE}"
    print(f"mock archive: {archive.base_url}")
    print(f"service:      {api}")
    print(f"demo URI-M:   {urim}")

    card = requests.get(f"{api}/services/product/socialcard/{urim}", timeout=60)
    (out_dir / "card.html").write_text(card.text, encoding="utf-8")
    reel = requests.get(
        f"{api}/services/product/imagereel/{urim}",
        headers={"Prefer": "imagecount=3"},
        timeout=120,
    )
    (out_dir / "imagereel.gif").write_bytes(reel.content)
    contentdata = requests.get(f"{api}/services/memento/contentdata/{urim}", timeout=60)
    print(json.dumps(contentdata.json(), indent=2))

    story_file = out_dir / "story.txt"
    story_file.write_text(f"{urim}\n")
    code = tellstory_main([
        "-i", str(story_file), "--storyteller", "html",
        "-o", str(out_dir / "demo_story.html"),
        "--title", "A Demo Story", "--api-base", api,
    ])
    print(f"tellstory exit code: {code}")
    print(f"wrote {out_dir}/card.html, imagereel.gif, demo_story.html")

    server.shutdown()
    archive.stop()
    return code


if __name__ == "__main__":
    raise SystemExit(main())
