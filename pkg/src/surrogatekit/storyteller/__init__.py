"""Template-driven storytelling: compose many surrogates into stories."""

from .bindings import ApiClient, ApiError, SURROGATE_FIELDS
from .render import PostPlan, render_story
from .story import Story, StoryElement, StoryParseError, parse_story_file
from .template import Template, TemplateParseError, parse_template

__all__ = [
    "ApiClient",
    "ApiError",
    "SURROGATE_FIELDS",
    "PostPlan",
    "render_story",
    "Story",
    "StoryElement",
    "StoryParseError",
    "parse_story_file",
    "Template",
    "TemplateParseError",
    "parse_template",
]
