"""Service publishers.

Real social-network posting is out of scope; the mock publishers
enforce the real services' limits (text length, media count per post),
thread posts the way a reply chain works, and write a JSON-lines
transcript to disk so runs can be inspected. Posting stops at the first
mid-thread failure and the report says which posts made it out.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import yaml


class PublishError(Exception):
    pass


class AuthFailed(PublishError):
    pass


class LimitExceeded(PublishError):
    def __init__(self, post_label, detail):
        super().__init__(f"{post_label}: {detail}")
        self.post_label = post_label


@dataclass(frozen=True)
class Receipt:
    post_id: str
    parent_id: str | None
    index: int


@dataclass
class PublishReport:
    receipts: list = field(default_factory=list)
    failed_index: int | None = None
    error: str | None = None

    @property
    def complete(self):
        return self.failed_index is None


class MockServicePublisher:
    """In-memory publisher with configurable limits and fault injection."""

    def __init__(self, name, text_limit, media_limit, transcript_path=None,
                 fail_on_index=None):
        self.name = name
        self.text_limit = text_limit
        self.media_limit = media_limit
        self.transcript_path = transcript_path
        self.fail_on_index = fail_on_index
        self.posted = []
        self._counter = 0

    def authenticate(self, credentials):
        if not isinstance(credentials, dict) or not credentials.get("token"):
            raise AuthFailed(f"{self.name}: credentials must provide a non-empty 'token'")

    def post(self, text, media, parent_id, index):
        if self.fail_on_index is not None and index == self.fail_on_index:
            raise PublishError(f"{self.name}: injected failure on post {index}")
        self._counter += 1
        post_id = f"{self.name}-{self._counter}"
        entry = {
            "index": index,
            "post_id": post_id,
            "parent_id": parent_id,
            "text": text,
            "media": [
                {
                    "content_type": item.content_type,
                    "byte_size": len(item.data),
                    "sha256": hashlib.sha256(item.data).hexdigest(),
                }
                for item in media
            ],
        }
        self.posted.append(entry)
        if self.transcript_path:
            with open(self.transcript_path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(entry) + "\n")
        return post_id


def make_publisher(kind, transcript_path=None):
    if kind == "mock-twitter":
        return MockServicePublisher("mock-twitter", text_limit=280, media_limit=4,
                                    transcript_path=transcript_path)
    if kind == "mock-facebook":
        return MockServicePublisher("mock-facebook", text_limit=63206, media_limit=10,
                                    transcript_path=transcript_path)
    raise ValueError(f"unknown service storyteller {kind!r}")


def load_credentials(path):
    with open(path, encoding="utf-8") as fh:
        doc = yaml.safe_load(fh)
    if not isinstance(doc, dict):
        raise AuthFailed(f"credentials file {path} must be a YAML mapping")
    return doc


def validate_plan(plan, publisher):
    """Limit checks for every post, before any network call."""
    for index, post in enumerate(plan.posts):
        label = "title post" if index == 0 else f"element post {index}"
        if len(post.text) > publisher.text_limit:
            raise LimitExceeded(
                label,
                f"text length {len(post.text)} exceeds the {publisher.text_limit}-character limit",
            )
        if len(post.media) > publisher.media_limit:
            raise LimitExceeded(
                label,
                f"{len(post.media)} media items exceed the {publisher.media_limit}-item limit",
            )


def publish(plan, publisher, credentials):
    """Validate, then post the thread: title first, replies chained after."""
    publisher.authenticate(credentials)
    validate_plan(plan, publisher)
    report = PublishReport()
    parent_id = None
    for index, post in enumerate(plan.posts):
        try:
            post_id = publisher.post(post.text, post.media, parent_id, index)
        except PublishError as exc:
            report.failed_index = index
            report.error = str(exc)
            return report
        report.receipts.append(Receipt(post_id=post_id, parent_id=parent_id, index=index))
        parent_id = post_id
    return report
