"""Social card HTML.

The card keeps facts about the page's content and facts about the
archive in two disjoint container subtrees (`card-content-facts` vs
`card-archive-facts`) so a reader can never mistake the archive for the
author. Options can inline the striking image and favicons as data URIs
and drop the service JavaScript for fully self-contained markup.
"""

from __future__ import annotations

import base64
import re
from dataclasses import dataclass
from html import escape

from ..errors import SurrogateError
from ..memento_client import format_http_datetime
from .bundle import build_surrogate_bundle


@dataclass(frozen=True)
class CardOptions:
    datauri_favicon: bool = False
    datauri_image: bool = False
    using_remote_javascript: bool = True
    minify_markup: bool = False


def to_data_uri(fetcher, uri):
    """Inline a resource as a data URI; None when it cannot be fetched."""
    try:
        response = fetcher.fetch(uri)
    except SurrogateError:
        return None
    if not response.ok:
        return None
    media_type = response.content_type or "application/octet-stream"
    payload = base64.b64encode(response.body).decode("ascii")
    return f"data:{media_type};base64,{payload}"


def _img(uri, css_class, alt=""):
    return f'<img class="{css_class}" src="{escape(uri, quote=True)}" alt="{escape(alt, quote=True)}">'


def render_card_html(bundle, options=CardOptions(), fetcher=None, service_base=None):
    """Card markup from an assembled bundle."""
    image_uri = bundle.best_image_uri
    archive_favicon = bundle.archive_favicon
    original_favicon = bundle.original_favicon
    if options.datauri_image and image_uri and fetcher is not None:
        image_uri = to_data_uri(fetcher, image_uri) or image_uri
    if options.datauri_favicon and fetcher is not None:
        if archive_favicon:
            archive_favicon = to_data_uri(fetcher, archive_favicon) or archive_favicon
        if original_favicon:
            original_favicon = to_data_uri(fetcher, original_favicon) or original_favicon

    content_lines = ['<div class="card-content-facts">']
    content_lines.append(
        f'<p class="card-title"><a href="{escape(bundle.urim, quote=True)}">'
        f"{escape(bundle.title) or escape(bundle.urim)}</a></p>"
    )
    if image_uri:
        content_lines.append(
            f'<div class="card-image">{_img(image_uri, "card-striking-image", bundle.title)}</div>'
        )
    if bundle.snippet:
        content_lines.append(f'<p class="card-snippet">{escape(bundle.snippet)}</p>')
    original_bits = []
    if original_favicon:
        original_bits.append(_img(original_favicon, "card-original-favicon"))
    original_bits.append(
        f'<span class="card-original-domain">{escape(bundle.original_domain)}</span>'
    )
    if bundle.original_linkstatus == "Live":
        original_bits.append(
            f'<a class="card-original-link" href="{escape(bundle.uri_r, quote=True)}">current version</a>'
        )
    else:
        original_bits.append(
            f'<a class="card-original-link card-original-rotten" '
            f'href="{escape(bundle.uri_r, quote=True)}">original (no longer resolving)</a>'
        )
    content_lines.append('<p class="card-original">' + " ".join(original_bits) + "</p>")
    content_lines.append("</div>")

    archive_lines = ['<div class="card-archive-facts">']
    archive_bits = []
    if archive_favicon:
        archive_bits.append(_img(archive_favicon, "card-archive-favicon"))
    archive_bits.append(
        f'<a class="card-archive-name" href="{escape(bundle.archive_uri, quote=True)}">'
        f"{escape(bundle.archive_name)}</a>"
    )
    archive_lines.append('<p class="card-archive">' + " ".join(archive_bits) + "</p>")
    archive_lines.append(
        '<p class="card-capture">'
        f'<span class="card-memento-datetime">{escape(format_http_datetime(bundle.memento_datetime))}</span> '
        f'<a class="card-timetravel" href="{escape(bundle.timetravel_uri, quote=True)}">other versions</a>'
        "</p>"
    )
    archive_lines.append("</div>")

    pieces = [
        f'<blockquote class="surrogate-card" data-urim="{escape(bundle.urim, quote=True)}"'
        f' data-memento-datetime="{format_http_datetime(bundle.memento_datetime)}">',
        *content_lines,
        *archive_lines,
        "</blockquote>",
    ]
    if options.using_remote_javascript and service_base:
        pieces.append(
            f'<script async src="{escape(service_base.rstrip("/"), quote=True)}/static/card.js"'
            ' charset="utf-8"></script>'
        )
    html = "\n".join(pieces)
    if options.minify_markup:
        html = re.sub(r">\s+<", "><", html).strip()
    return html


def build_social_card(record, ctx, options=CardOptions(), candidates=None):
    """Assemble facts and render; returns (html, bundle)."""
    bundle = build_surrogate_bundle(record, ctx, candidates=candidates)
    html = render_card_html(
        bundle, options, fetcher=ctx.fetcher, service_base=ctx.service_base
    )
    return html, bundle
