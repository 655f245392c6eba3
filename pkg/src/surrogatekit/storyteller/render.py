"""Story rendering: template + story + API = document or post plan.

Single templates render one document. Multipart templates produce a
PostPlan (a title post plus one post per link element, each with text
and ordered media attachments) for the service publishers. Per-element
endpoint failures follow the error policy: "skip" drops the element
with a warning, "abort" raises.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

from .bindings import ApiError, MediaValue, resolve_variable
from .template import ForNode, IfNode, TextNode, VarNode


@dataclass
class Post:
    text: str
    media: list = field(default_factory=list)  # MediaValue entries


@dataclass
class PostPlan:
    title_post: Post
    element_posts: list = field(default_factory=list)

    @property
    def posts(self):
        return [self.title_post, *self.element_posts]


class _Scope:
    def __init__(self, story, element=None, loop=None):
        self.story = story
        self.element = element
        self.loop = loop or {}

    def with_element(self, element, loop):
        return _Scope(self.story, element, loop)

    def lookup(self, path):
        head, _, rest = path.partition(".")
        if head == "metadata":
            value = self.story.metadata
            if rest:
                return value.get(rest, "")
            return value
        if head in ("title", "generated_by", "collection_url"):
            return getattr(self.story, head) or ""
        if head == "loop":
            return self.loop.get(rest, "")
        if head == "element":
            if self.element is None:
                return ""
            if rest == "type":
                return self.element.kind
            if rest == "text":
                return self.element.value if self.element.kind == "text" else ""
            return None  # surrogate paths resolve through the API
        return ""


def _stringify(value):
    if isinstance(value, MediaValue):
        return value.to_data_uri()
    return "" if value is None else str(value)


class _Renderer:
    def __init__(self, story, api, error_policy="skip", warn=None):
        self.story = story
        self.api = api
        self.error_policy = error_policy
        self.warn = warn or (lambda message: print(message, file=sys.stderr))

    def render_nodes(self, nodes, scope, media_sink=None):
        pieces = []
        for node in nodes:
            if isinstance(node, TextNode):
                pieces.append(node.text)
            elif isinstance(node, VarNode):
                value = self._value(node, scope)
                if media_sink is not None and isinstance(value, MediaValue):
                    media_sink.append(value)
                elif media_sink is not None and self._is_media_reference(node):
                    media_sink.append(self.api.fetch_external(_stringify(value)))
                else:
                    pieces.append(_stringify(value))
            elif isinstance(node, IfNode):
                for condition, body in node.branches:
                    if condition is None or self._evaluate(condition, scope):
                        pieces.append(self.render_nodes(body, scope, media_sink))
                        break
            elif isinstance(node, ForNode):
                pieces.append(self._render_loop(node, scope, media_sink))
        return "".join(pieces)

    @staticmethod
    def _is_media_reference(node):
        # in a media part, ranked-image URIs become attachments
        return node.path.rsplit(".", 1)[-1] == "image"

    def _render_loop(self, node, scope, media_sink):
        pieces = []
        elements = self.story.elements
        total = len(elements)
        for index, element in enumerate(elements):
            loop = {
                "index": index + 1,
                "index0": index,
                "first": index == 0,
                "last": index == total - 1,
            }
            element_scope = scope.with_element(element, loop)
            try:
                pieces.append(self.render_nodes(node.body, element_scope, media_sink))
            except ApiError as exc:
                if self.error_policy == "abort":
                    raise
                self.warn(f"skipping story element {index + 1} ({element.value}): {exc}")
        return "".join(pieces)

    def _value(self, node, scope):
        value = scope.lookup(node.path)
        if value is None:
            if scope.element is None or scope.element.kind != "link":
                return ""
            return resolve_variable(node.path, scope.element, self.api, node.prefer)
        return value

    def _evaluate(self, condition, scope):
        value = scope.lookup(condition.path)
        if value is None and scope.element is not None and scope.element.kind == "link":
            try:
                value = resolve_variable(condition.path, scope.element, self.api)
            except ApiError:
                value = ""
        if condition.kind == "truth":
            return bool(value)
        if condition.kind == "not":
            return not bool(value)
        if condition.kind == "eq":
            return str(value) == condition.literal
        if condition.kind == "ne":
            return str(value) != condition.literal
        if condition.kind == "mod":
            try:
                return int(value) % condition.modulo == condition.remainder
            except (TypeError, ValueError):
                return False
        raise ValueError(f"unknown condition kind {condition.kind}")


def render_story(story, template, api, error_policy="skip", warn=None):
    """Render a parsed story through a parsed template.

    Returns a string for single templates, a PostPlan for multipart.
    """
    renderer = _Renderer(story, api, error_policy, warn)
    scope = _Scope(story)
    if template.kind == "single":
        return renderer.render_nodes(template.nodes, scope)

    title_text = renderer.render_nodes(template.title_part, scope).strip()
    plan = PostPlan(title_post=Post(text=title_text))
    for index, element in enumerate(story.link_elements()):
        loop = {"index": index + 1, "index0": index, "first": index == 0, "last": False}
        element_scope = scope.with_element(element, loop)
        try:
            text = renderer.render_nodes(template.element_part, element_scope).strip()
            media = []
            renderer.render_nodes(template.media_part, element_scope, media_sink=media)
        except ApiError as exc:
            if error_policy == "abort":
                raise
            renderer.warn(f"skipping story element {index + 1} ({element.value}): {exc}")
            continue
        plan.element_posts.append(Post(text=text, media=media))
    return plan
