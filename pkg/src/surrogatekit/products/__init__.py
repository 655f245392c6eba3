"""The five surrogate products and the facts bundle they share."""

from .bundle import SurrogateBundle, build_surrogate_bundle
from .context import ProductContext
from .docreel import build_docreel
from .frames import FrameEntry, FramePlan
from .imagereel import build_imagereel
from .social_card import CardOptions, build_social_card
from .thumbnail import CommandRenderer, ThumbnailPrefs, render_thumbnail
from .wordcloud import build_wordcloud, known_colormaps

__all__ = [
    "SurrogateBundle",
    "build_surrogate_bundle",
    "ProductContext",
    "FrameEntry",
    "FramePlan",
    "CardOptions",
    "build_social_card",
    "CommandRenderer",
    "ThumbnailPrefs",
    "render_thumbnail",
    "build_imagereel",
    "build_wordcloud",
    "known_colormaps",
    "build_docreel",
]
