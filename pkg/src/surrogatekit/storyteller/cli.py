"""tellstory: render stories of mementos through the surrogate service.

    tellstory -i story-mementos.txt --storyteller html -o mystory.html \
        --title "This is My Story Title"

File storytellers (template, html, markdown, mediawiki) write a
document to -o; service storytellers (mock-twitter, mock-facebook)
need -c credentials and post a thread, writing a transcript to disk.
"""

from __future__ import annotations

import argparse
import os
import sys
from importlib import resources

from .bindings import ApiClient, ApiError
from .publishers import (
    AuthFailed,
    LimitExceeded,
    PublishError,
    load_credentials,
    make_publisher,
    publish,
)
from .render import render_story
from .story import StoryParseError, parse_story_file
from .template import TemplateParseError, parse_template

FILE_STORYTELLERS = ("template", "html", "markdown", "mediawiki")
SERVICE_STORYTELLERS = ("mock-twitter", "mock-facebook")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tellstory",
        description="Compose a story of memento surrogates.",
    )
    parser.add_argument("-i", dest="input", required=True, metavar="STORYFILE",
                        help="story input: newline-separated URI-Ms or JSON")
    parser.add_argument(
        "--storyteller",
        required=True,
        choices=FILE_STORYTELLERS + SERVICE_STORYTELLERS,
    )
    parser.add_argument("--story-template", metavar="FILE",
                        help="template file (required for --storyteller template)")
    parser.add_argument("-o", dest="output", metavar="OUTFILE",
                        help="output file for file storytellers; '-' for stdout")
    parser.add_argument("--title", help="story title (required for newline input)")
    parser.add_argument("-c", dest="credentials", metavar="CREDENTIALS_YML",
                        help="YAML credentials (required for service storytellers)")
    parser.add_argument(
        "--api-base",
        default=os.environ.get("SURROGATE_API_BASE", "http://127.0.0.1:5550"),
        help="surrogate service base URL (env SURROGATE_API_BASE)",
    )
    parser.add_argument("--on-element-error", choices=("skip", "abort"), default="skip")
    parser.add_argument("--transcript", metavar="FILE",
                        help="mock publisher transcript path (default: <storyteller>-transcript.jsonl)")
    return parser


def _template_text(args):
    if args.storyteller == "template":
        with open(args.story_template, encoding="utf-8") as fh:
            return fh.read()
    name = args.storyteller
    return resources.files("surrogatekit.storyteller.presets").joinpath(
        f"{name}.tmpl"
    ).read_text("utf-8")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    is_service = args.storyteller in SERVICE_STORYTELLERS
    if args.storyteller == "template" and not args.story_template:
        parser.error("--storyteller template requires --story-template")
    if not is_service and not args.output:
        parser.error(f"--storyteller {args.storyteller} requires -o <outfile>")
    if is_service and not args.credentials:
        parser.error(f"--storyteller {args.storyteller} requires -c <credentials.yml>")

    try:
        with open(args.input, "rb") as fh:
            story = parse_story_file(fh.read(), title_override=args.title)
    except OSError as exc:
        print(f"tellstory: cannot read story file: {exc}", file=sys.stderr)
        return 1
    except StoryParseError as exc:
        print(f"tellstory: bad story file: {exc}", file=sys.stderr)
        return 1

    try:
        template = parse_template(_template_text(args))
    except OSError as exc:
        print(f"tellstory: cannot read template: {exc}", file=sys.stderr)
        return 1
    except TemplateParseError as exc:
        print(f"tellstory: bad template: {exc}", file=sys.stderr)
        return 1

    if is_service and template.kind != "multipart":
        print("tellstory: service storytellers need a multipart template", file=sys.stderr)
        return 1

    api = ApiClient(args.api_base)
    try:
        rendered = render_story(story, template, api, error_policy=args.on_element_error)
    except ApiError as exc:
        print(f"tellstory: {exc}", file=sys.stderr)
        return 1

    if not is_service:
        if isinstance(rendered, str):
            if args.output == "-":
                sys.stdout.write(rendered)
            else:
                with open(args.output, "w", encoding="utf-8") as fh:
                    fh.write(rendered)
                print(f"tellstory: wrote {args.output}")
            return 0
        print("tellstory: multipart templates need a service storyteller", file=sys.stderr)
        return 1

    transcript = args.transcript or f"{args.storyteller}-transcript.jsonl"
    try:
        credentials = load_credentials(args.credentials)
        publisher = make_publisher(args.storyteller, transcript_path=transcript)
        report = publish(rendered, publisher, credentials)
    except (AuthFailed, LimitExceeded) as exc:
        print(f"tellstory: {exc}", file=sys.stderr)
        return 1
    except (OSError, PublishError) as exc:
        print(f"tellstory: {exc}", file=sys.stderr)
        return 1
    if not report.complete:
        posted = ", ".join(r.post_id for r in report.receipts) or "none"
        print(
            f"tellstory: story partially posted (posts that succeeded: {posted}); "
            f"failed at post {report.failed_index}: {report.error}",
            file=sys.stderr,
        )
        return 1
    print(
        f"tellstory: posted {len(report.receipts)} posts as {args.storyteller}; "
        f"transcript in {transcript}"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
