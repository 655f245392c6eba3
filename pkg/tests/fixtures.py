"""Shared fixture builders: deterministic pages, images, and manifests.

The Blast Theory fixture reproduces the golden-figure structure: the
page title, a body whose boilerplate-removed text starts with the known
197-character snippet, and 14 images whose engineered sizes force the
documented ranked order (ur_icon.jpg sits at page position 11 and rank
7). Image scores are dominated by the pixel-area term: area gaps
between neighbors in the intended ranking exceed the largest possible
swing from the histogram and color terms, so the ranking is forced by
construction, not tuned.
"""

from __future__ import annotations

import io

from PIL import Image

SNIPPET_PREFIX = (
    "Sam Pearson and Clara Garcia Fraile are in residence for one month "
    "Sam Pearson and Clara Garcia Fraile are in residence for one month "
    "working on a new project called In My Shoes. They are developin"
)
assert len(SNIPPET_PREFIX) == 197

BLAST_URI_R = "http://blasttheory.co.uk/"
BLAST_DT14 = "20090522221251"
CNN_URI_R = "http://news.blogs.cnn.com/category/world/egypt-world-latest-news/"
CNN_DT14 = "20110211072257"
CNN_COLLECTION_ID = "2950"

# (path under the site, width, height, stripe count) in the figure's ranked
# order: strictly decreasing pixel area keeps the ranking stable against the
# histogram/color terms.
BLAST_IMAGES_RANKED = [
    ("bt/i/dotf/Untitled-1.jpg", 700, 500, 8),
    ("bt/i/yougetme/ygm_icon.jpg", 640, 492, 7),
    ("bt/i/cysmn/cy_icon.jpg", 600, 470, 6),
    ("bt/i/rider_spoke/rs_icon.jpg", 560, 440, 5),
    ("bt/i/ulrikeandeamon/ulrikeandeamon_small.jpg", 540, 400, 4),
    ("bt/i/trucold/trucold_icon.jpg", 500, 370, 3),
    ("bt/i/uncleroy/ur_icon.jpg", 168, 96, 2),
    ("bt/pe/bt_logo.gif", 160, 92, 2),
    ("bt/pe/latest.gif", 150, 88, 2),
    ("bt/pe/about.gif", 140, 84, 2),
    ("bt/pe/home.gif", 130, 80, 2),
    ("bt/pe/recent.gif", 120, 76, 2),
    ("bt/pe/types.gif", 110, 72, 2),
    ("bt/pe/chrono.gif", 100, 68, 2),
]
# page order: ur_icon.jpg must land at 0-based position 11 (N=14, n=11)
BLAST_PAGE_ORDER = [7, 1, 9, 2, 10, 3, 8, 4, 11, 5, 12, 6, 13, 0]
assert BLAST_PAGE_ORDER.index(6) == 11  # ranked index 6 is ur_icon.jpg


def pixel_loop_oracle(png_bytes):
    """Naive per-pixel recomputation of every image feature.

    Deliberately avoids PIL's histogram()/getcolors() so it stays an
    independent check of the production path.
    """
    im = Image.open(io.BytesIO(png_bytes)).convert("RGB")
    width, height = im.size
    bins = [0] * 768
    colors = set()
    for y in range(height):
        for x in range(width):
            r, g, b = im.getpixel((x, y))
            bins[r] += 1
            bins[256 + g] += 1
            bins[512 + b] += 1
            colors.add((r, g, b))
    return {
        "width": width,
        "height": height,
        "s": width * height,
        "h": sum(1 for count in bins if count == 0),
        "c": len(colors),
        "r": width / height,
    }


def stripe_image_png(width, height, stripes, seed):
    """Deterministic vertical-stripe PNG with a bounded distinct-color count."""
    im = Image.new("RGB", (width, height))
    pixels = im.load()
    colors = [
        (
            (37 * seed + 61 * k) % 256,
            (83 * seed + 29 * k) % 256,
            (151 * seed + 97 * k) % 256,
        )
        for k in range(stripes)
    ]
    band = max(1, width // stripes)
    for x in range(width):
        color = colors[min(x // band, stripes - 1)]
        for y in range(height):
            pixels[x, y] = color
    buffer = io.BytesIO()
    im.save(buffer, format="PNG")
    return buffer.getvalue()


def solid_png(width, height, color):
    im = Image.new("RGB", (width, height), color)
    buffer = io.BytesIO()
    im.save(buffer, format="PNG")
    return buffer.getvalue()


def favicon_png():
    return solid_png(16, 16, (20, 90, 200))


def _b64(data):
    import base64

    return base64.b64encode(data).decode("ascii")


def blast_theory_raw_html():
    # first block ends where the second "Sam Pearson" sentence begins
    cut = SNIPPET_PREFIX.index(" Sam", 1)
    block1 = SNIPPET_PREFIX[:cut]
    block2 = SNIPPET_PREFIX[cut + 1:] + (
        "g a new interactive artwork exploring presence and absence in everyday spaces."
    )
    img_tags = "\n".join(
        f'<img src="{BLAST_URI_R}{BLAST_IMAGES_RANKED[ranked_index][0]}" alt="">'
        for ranked_index in BLAST_PAGE_ORDER
    )
    return f"""<!DOCTYPE html>
<html>
<head>
<title>Blast Theory</title>
<link rel="icon" href="{BLAST_URI_R}favicon.png">
</head>
<body>
<div class="intro"><p>{block1}</p></div>
<div class="main">
<p>{block2}</p>
</div>
<nav><a href="/">Home</a> <a href="/work">Our Work</a> <a href="/about">About Us</a></nav>
<div class="gallery">
{img_tags}
</div>
</body>
</html>
"""


CNN_SIDEBAR_LINKS = [
    "Most popular on CNN",
    "Editor picks archive",
    "World sport headlines",
]


def cnn_raw_html():
    sidebar = " ".join(f'<a href="/{i}">{text}</a>' for i, text in enumerate(CNN_SIDEBAR_LINKS))
    return f"""<!DOCTYPE html>
<html>
<head><title>Egypt | CNN News Blogs</title></head>
<body>
<div id="content">
<p>Protesters gathered in Tahrir Square on Friday demanding change, and the crowd
grew through the afternoon as organizers called for the largest demonstration yet.
Egypt remains the focus of world attention this week.</p>
<p>State television reported that the president would address the nation in the
evening, while soldiers held their positions around the square and protest leaders
urged calm. Protest organizers said they would remain until their demands were met.</p>
<p>Internet access was intermittent across Cairo and Alexandria on Friday, and
mobile networks reported heavy congestion as families tried to reach relatives
near the demonstrations in Egypt.</p>
</div>
<div class="sidebar">{sidebar}</div>
<div class="pics">
<img src="{CNN_URI_R}images/square.jpg">
<img src="{CNN_URI_R}images/crowd.jpg">
<img src="{CNN_URI_R}images/flag.jpg">
<img src="{CNN_URI_R}images/night.jpg">
<img src="{CNN_URI_R}images/banner.jpg">
</div>
</body>
</html>
"""


CNN_IMAGES = [
    ("images/square.jpg", 640, 480, 8),
    ("images/crowd.jpg", 600, 450, 7),
    ("images/flag.jpg", 560, 420, 6),
    ("images/night.jpg", 520, 400, 5),
    ("images/banner.jpg", 480, 360, 4),
]


def wordcount_page_html():
    return """<html><head><title>tiny</title></head>
<body><p>egypt egypt protest demonstrations continue in the capital.</p></body></html>
"""


def build_manifest():
    """One manifest covering every integration scenario."""
    blast_resources = [
        {
            "uri_r": f"{BLAST_URI_R}{path}",
            "content_type": "image/png",
            "body_base64": _b64(stripe_image_png(width, height, stripes, seed=rank)),
        }
        for rank, (path, width, height, stripes) in enumerate(BLAST_IMAGES_RANKED)
    ]
    blast_resources.append(
        {
            "uri_r": f"{BLAST_URI_R}favicon.png",
            "content_type": "image/png",
            "body_base64": _b64(favicon_png()),
        }
    )
    cnn_resources = [
        {
            "uri_r": f"{CNN_URI_R}{path}",
            "content_type": "image/png",
            "body_base64": _b64(stripe_image_png(width, height, stripes, seed=20 + idx)),
        }
        for idx, (path, width, height, stripes) in enumerate(CNN_IMAGES)
    ]
    return {
        "originals": [
            {
                "uri_r": BLAST_URI_R,
                "captures": [
                    {
                        "datetime14": BLAST_DT14,
                        "content_type": "text/html",
                        "body": blast_theory_raw_html(),
                        "resources": blast_resources,
                    },
                    {
                        "datetime14": "20110301120000",
                        "content_type": "text/html",
                        "body": "<html><head><title>Blast Theory</title></head><body><p>A later capture of the site with fresh content for negotiation tests.</p></body></html>",
                    },
                    {
                        "datetime14": "20150815063000",
                        "content_type": "text/html",
                        "body": "<html><head><title>Blast Theory</title></head><body><p>The newest capture of the site used by TimeMap ordering tests.</p></body></html>",
                    },
                ],
            },
            {
                "uri_r": CNN_URI_R,
                "collection_id": CNN_COLLECTION_ID,
                "captures": [
                    {
                        "datetime14": CNN_DT14,
                        "content_type": "text/html",
                        "body": cnn_raw_html(),
                        "resources": cnn_resources,
                    }
                ],
            },
            {
                "uri_r": "http://tiny.example/words.html",
                "captures": [
                    {
                        "datetime14": "20200101000000",
                        "content_type": "text/html",
                        "body": wordcount_page_html(),
                    }
                ],
            },
            {
                "uri_r": "http://noimages.example/empty.html",
                "captures": [
                    {
                        "datetime14": "20200101000000",
                        "content_type": "text/html",
                        "body": "<html><head><title>No Images Here</title></head><body><p>This page intentionally carries prose only, long enough to rank paragraphs but with no pictures anywhere.</p></body></html>",
                    }
                ],
            },
            {
                "uri_r": "http://query.example/page?id=7",
                "captures": [
                    {
                        "datetime14": "20210401000000",
                        "content_type": "text/html",
                        "body": "<html><head><title>Query Page</title></head><body><p>A page whose original URI carries a query string to prove the path stays opaque.</p></body></html>",
                    }
                ],
            },
            {
                "uri_r": "http://negotiate.example/page.html",
                "captures": [
                    {
                        "datetime14": "20110211000000",
                        "content_type": "text/html",
                        "body": "<html><body><p>february capture used by the negotiation tests.</p></body></html>",
                    },
                    {
                        "datetime14": "20120510000000",
                        "content_type": "text/html",
                        "body": "<html><body><p>may capture used by the negotiation tests.</p></body></html>",
                    },
                ],
            },
        ],
        "live": {
            "/favicon.ico": {
                "status": 200,
                "content_type": "image/png",
                "body_base64": _b64(favicon_png()),
            },
            "/live/plain/page.html": {
                "status": 200,
                "content_type": "text/html",
                "body": "<html><body><p>not archived at all</p></body></html>",
            },
        },
        "collections": [
            {
                "id": CNN_COLLECTION_ID,
                "name": "Occupy Movement 2011/2012",
                "seed_metadata": {
                    CNN_URI_R: {"title": "CNN Egypt blog", "subject": "protests"}
                },
            }
        ],
        "faults": [
            {"path_contains": "fault-delay", "delay_seconds": 3.0},
            {"path_contains": "fault-reset", "reset": True},
            {"path_contains": "fault-status", "status": 503},
        ],
    }
