"""mock-archive: run the simulated web archive from a manifest file."""

from __future__ import annotations

import argparse

from .manifest import FixtureManifest, ManifestError
from .server import MockArchiveServer


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mock-archive",
        description="Fixture-driven simulated web archive with Memento support.",
    )
    parser.add_argument("--manifest", required=True, help="JSON fixture manifest")
    parser.add_argument("--port", type=int, default=8350)
    parser.add_argument("--host", default="127.0.0.1")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        manifest = FixtureManifest.from_file(args.manifest)
    except (ManifestError, OSError, ValueError) as exc:
        print(f"mock-archive: cannot load manifest: {exc}")
        return 1
    try:
        server = MockArchiveServer(manifest, host=args.host, port=args.port)
    except OSError as exc:
        print(f"mock-archive: cannot bind {args.host}:{args.port}: {exc}")
        return 1
    print(f"mock archive serving on {server.base_url}", flush=True)
    try:
        server._httpd.serve_forever()
    except KeyboardInterrupt:
        server.stop()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
