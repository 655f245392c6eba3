"""Striking-image discovery and scoring.

Candidates come from IMG SRC values first, then SRCSET entries, in
document order. Each decodable candidate is scored

    S = k1*(N - n) + k2*s - k3*h - k4*r + k5*c

where N is the page's image count, n the candidate's 0-based position,
s the pixel area, h the number of zero-valued histogram columns, r the
width/height ratio, and c the distinct color count. The histogram
convention is fixed at 768 columns: 256 bins per RGB channel, images
converted to RGB before counting (animated sources use frame 0).
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from urllib.parse import urljoin

from PIL import Image

from .errors import SurrogateError
from .htmlmini import meta_content, parse_html
from .memento_client import is_memento_response, negotiate_datetime

HISTOGRAM_COLUMNS = 768
MIN_IMAGE_DIMENSION = 32  # spacers and favicons are not striking images

STRIKING_META_KEYS = ("og:image", "twitter:image", "twitter:image:src", "image")


@dataclass(frozen=True)
class ScoringWeights:
    k1: float = 0.1
    k2: float = 0.4
    k3: float = 10.0
    k4: float = 0.5
    k5: float = 10.0


@dataclass(frozen=True)
class ImageFeatures:
    N: int
    n: int
    width: int
    height: int
    size_in_pixels: int
    blank_histogram_columns: int
    ratio_width_height: float
    color_count: int
    byte_size: int
    content_type: str | None = None
    is_a_memento: bool = False


@dataclass
class ImageCandidate:
    urim: str
    source: str = "body"  # "body" or the meta key that supplied it
    features: ImageFeatures | None = None
    score: float | None = None
    fetch_status: str = "ok"  # ok | failed | not_a_memento
    image_bytes: bytes | None = None  # retained only when a reel needs pixels


class UndecodableImage(SurrogateError):
    http_status = 500


def extract_image_candidates(augmented_html, base_uri, content_type=None):
    """Absolute candidate URIs: IMG SRC first, then SRCSET entries.

    De-duplicated preserving first occurrence; list order defines n.
    """
    root = parse_html(augmented_html, content_type)
    imgs = root.find_all("img")
    ordered = []
    for node in imgs:
        src = (node.get("src") or "").strip()
        if src:
            ordered.append(urljoin(base_uri, src))
    for node in imgs:
        srcset = node.get("srcset") or ""
        for entry in srcset.split(","):
            uri = entry.strip().split()[0] if entry.strip() else ""
            if uri:
                ordered.append(urljoin(base_uri, uri))
    seen, unique = set(), []
    for uri in ordered:
        if uri not in seen:
            seen.add(uri)
            unique.append(uri)
    return unique


def compute_image_features(image_bytes, n, N, content_type=None, is_a_memento=False):
    """Decode and measure one image; raises UndecodableImage on garbage."""
    try:
        with Image.open(io.BytesIO(image_bytes)) as im:
            im.seek(0)  # animated sources contribute frame 0
            rgb = im.convert("RGB")
    except Exception as exc:
        raise UndecodableImage(f"cannot decode image bytes: {exc}") from exc
    width, height = rgb.size
    histogram = rgb.histogram()  # 256 bins per band, 768 total
    blank = sum(1 for value in histogram if value == 0)
    colors = rgb.getcolors(maxcolors=width * height + 1)
    return ImageFeatures(
        N=N,
        n=n,
        width=width,
        height=height,
        size_in_pixels=width * height,
        blank_histogram_columns=blank,
        ratio_width_height=width / height,
        color_count=len(colors),
        byte_size=len(image_bytes),
        content_type=content_type,
        is_a_memento=is_a_memento,
    )


def score_image(features, weights=ScoringWeights()):
    """The scoring equation, exactly."""
    return (
        weights.k1 * (features.N - features.n)
        + weights.k2 * features.size_in_pixels
        - weights.k3 * features.blank_histogram_columns
        - weights.k4 * features.ratio_width_height
        + weights.k5 * features.color_count
    )


def _mementoize(uri, record, fetcher, timegate_base):
    """Fetch uri; if it is not a memento, negotiate one near the record's datetime.

    Returns (resolved_uri, response, is_a_memento) with response None on failure.
    """
    try:
        response = fetcher.fetch(uri)
    except SurrogateError:
        return uri, None, False
    if response.ok and is_memento_response(response):
        return response.final_uri, response, True
    if timegate_base is None:
        return uri, (response if response.ok else None), False
    negotiated = None
    try:
        negotiated = negotiate_datetime(uri, record.memento_datetime, timegate_base, fetcher)
    except SurrogateError:
        negotiated = None
    if negotiated:
        try:
            response = fetcher.fetch(negotiated)
        except SurrogateError:
            return uri, None, False
        if response.ok:
            return negotiated, response, is_memento_response(response)
    return uri, None, False


def rank_images(record, fetcher, weights=ScoringWeights(), timegate_base=None,
                keep_bytes=False):
    """Score every candidate in the augmented content.

    Returns candidates in page order (n order); undecodable or tiny
    images keep fetch_status entries but no score.
    """
    html = record.content_augmented
    uris = extract_image_candidates(html, record.urim, record.augmented_content_type)
    N = len(uris)
    candidates = []
    for n, uri in enumerate(uris):
        candidate = ImageCandidate(urim=uri)
        resolved, response, is_mem = _mementoize(uri, record, fetcher, timegate_base)
        candidate.urim = resolved
        if response is None:
            candidate.fetch_status = "failed"
            candidates.append(candidate)
            continue
        if not is_mem:
            candidate.fetch_status = "not_a_memento"
        try:
            features = compute_image_features(
                response.body, n, N,
                content_type=response.content_type or None,
                is_a_memento=is_mem,
            )
        except UndecodableImage:
            candidate.fetch_status = "failed"
            candidates.append(candidate)
            continue
        if features.width < MIN_IMAGE_DIMENSION or features.height < MIN_IMAGE_DIMENSION:
            candidate.fetch_status = "failed"
            candidates.append(candidate)
            continue
        candidate.features = features
        candidate.score = score_image(features, weights)
        if keep_bytes:
            candidate.image_bytes = response.body
        candidates.append(candidate)
    return candidates


def ranked_image_uris(candidates):
    """Scored candidate URIs by descending score; ties favor lower n."""
    scored = [c for c in candidates if c.score is not None]
    scored.sort(key=lambda c: (-c.score, c.features.n))
    return [c.urim for c in scored]


def _meta_striking_image(record, fetcher):
    """The social-metadata cascade: each key wins only if it resolves to a
    memento answering 200."""
    root = parse_html(record.content_augmented, record.augmented_content_type)
    for key in STRIKING_META_KEYS:
        value = meta_content(root, key)
        if not value:
            continue
        uri = urljoin(record.urim, value)
        try:
            response = fetcher.fetch(uri)
        except SurrogateError:
            continue
        if response.status == 200 and is_memento_response(response):
            return response.final_uri
    return None


def select_best_image(record, fetcher, weights=ScoringWeights(), timegate_base=None,
                      default_image_uri=None, candidates=None):
    """Full striking-image cascade; never fails, worst case is the default."""
    meta_choice = _meta_striking_image(record, fetcher)
    if meta_choice:
        return meta_choice
    if candidates is None:
        candidates = rank_images(record, fetcher, weights, timegate_base)
    ranked = ranked_image_uris(candidates)
    if ranked:
        return ranked[0]
    return default_image_uri
