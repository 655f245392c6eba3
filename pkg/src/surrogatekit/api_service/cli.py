"""Run the surrogate service from the command line.

Every flag has an environment-variable twin (SURROGATE_*) so container
deployments can configure without flags; flags win when both are set.
"""

from __future__ import annotations

import argparse
import os

from .config import ServiceConfig
from .service import SurrogateService


def _env(name, default=None):
    return os.environ.get(f"SURROGATE_{name}", default)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="surrogate-service",
        description="Archive-aware surrogate generation HTTP service.",
    )
    parser.add_argument("--host", default=_env("HOST", "127.0.0.1"))
    parser.add_argument("--port", type=int, default=int(_env("PORT", "5550")))
    parser.add_argument(
        "--archive-profiles",
        default=_env("ARCHIVE_PROFILES"),
        help="JSON archive-profile config file (defaults bundled)",
    )
    parser.add_argument(
        "--timegate-base",
        default=_env("TIMEGATE_BASE"),
        help="TimeGate base URI used to mementoize images and favicons",
    )
    parser.add_argument(
        "--aggregator-base",
        default=_env("AGGREGATOR_BASE", "http://timetravel.mementoweb.org"),
    )
    parser.add_argument(
        "--renderer-command",
        default=_env("RENDERER_COMMAND"),
        help="screenshot backend command with {uri} {width} {height} placeholders "
        "(default: bundled stub renderer)",
    )
    parser.add_argument("--fetch-timeout", type=float, default=float(_env("FETCH_TIMEOUT", "30")))
    parser.add_argument("--cache-capacity", type=int, default=int(_env("CACHE_CAPACITY", "64")))
    parser.add_argument("--cache-ttl", type=float, default=float(_env("CACHE_TTL", "300")))
    parser.add_argument(
        "--static-dir",
        default=_env("STATIC_DIR"),
        help="directory of UI assets to serve at / and /static/",
    )
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    config = ServiceConfig(
        host=args.host,
        port=args.port,
        archive_profiles_path=args.archive_profiles,
        timegate_base=args.timegate_base,
        aggregator_base=args.aggregator_base,
        renderer_command=args.renderer_command,
        fetch_timeout=args.fetch_timeout,
        cache_capacity=args.cache_capacity,
        cache_ttl=args.cache_ttl,
        static_dir=args.static_dir,
    )
    service = SurrogateService(config)
    server = service.make_server()
    print(f"surrogate service listening on http://{config.host}:{config.port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
