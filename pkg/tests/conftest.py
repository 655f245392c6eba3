import json
import threading

import pytest

from fixtures import (
    BLAST_DT14,
    BLAST_URI_R,
    CNN_COLLECTION_ID,
    CNN_DT14,
    CNN_URI_R,
    build_manifest,
)
from surrogatekit.api_service import ServiceConfig
from surrogatekit.api_service.service import SurrogateService
from surrogatekit.http_fetch import FetchResponse, Headers
from surrogatekit.mock_archive import MockArchiveServer


class FakeFetcher:
    """Canned-response fetcher for unit tests; records every request."""

    def __init__(self, responses=None):
        self.responses = dict(responses or {})
        self.requests = []

    def add(self, uri, body=b"", status=200, headers=None, final_uri=None):
        self.responses[uri] = FetchResponse(
            status=status,
            headers=Headers(headers or {}),
            body=body if isinstance(body, bytes) else body.encode("utf-8"),
            final_uri=final_uri or uri,
        )
        return self

    def fetch(self, uri, headers=None, allow_redirects=True, timeout=None):
        from surrogatekit.errors import ConnectionFailed

        self.requests.append((uri, dict(headers or {})))
        response = self.responses.get(uri)
        if response is None:
            raise ConnectionFailed(f"no canned response for {uri}")
        if callable(response):
            return response(uri, headers)
        return response


@pytest.fixture
def fake_fetcher():
    return FakeFetcher()


@pytest.fixture(scope="session")
def mock_archive():
    server = MockArchiveServer(build_manifest())
    server.start()
    yield server
    server.stop()


@pytest.fixture(scope="session")
def profiles_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("profiles") / "archive_profiles.json"
    path.write_text(
        json.dumps(
            {
                "profiles": [
                    {
                        "name": "mock",
                        "domain_pattern": "*",
                        "raw_token": "im_",
                        "banner_free_token": "if_",
                        "collection_path": True,
                    }
                ]
            }
        ),
        encoding="utf-8",
    )
    return str(path)


@pytest.fixture(scope="session")
def service(mock_archive, profiles_file):
    config = ServiceConfig(
        host="127.0.0.1",
        port=0,
        archive_profiles_path=profiles_file,
        timegate_base=f"{mock_archive.base_url}/timegate",
        fetch_timeout=1.5,
        cache_ttl=3600.0,
        cache_capacity=32,
    )
    return SurrogateService(config)


@pytest.fixture(scope="session")
def api_base(service):
    server = service.make_server()
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield service.config.base_url()
    server.shutdown()
    server.server_close()


@pytest.fixture(scope="session")
def blast_urim(mock_archive):
    return f"{mock_archive.base_url}/web/{BLAST_DT14}/{BLAST_URI_R}"


@pytest.fixture(scope="session")
def product_ctx(mock_archive, profiles_file):
    from surrogatekit.http_fetch import HttpFetcher
    from surrogatekit.products import CommandRenderer, ProductContext
    from surrogatekit.profiles import load_profiles

    return ProductContext(
        fetcher=HttpFetcher(timeout=5),
        profiles=tuple(load_profiles(profiles_file)),
        timegate_base=f"{mock_archive.base_url}/timegate",
        default_image_uri="http://svc.example/static/default-globe.png",
        service_base="http://svc.example",
        renderer=CommandRenderer(),
    )


@pytest.fixture(scope="session")
def blast_record(mock_archive, blast_urim, profiles_file):
    from surrogatekit.http_fetch import HttpFetcher
    from surrogatekit.memento_client import resolve_memento
    from surrogatekit.profiles import load_profiles

    return resolve_memento(blast_urim, HttpFetcher(timeout=5), load_profiles(profiles_file))


@pytest.fixture(scope="session")
def cnn_record(mock_archive, cnn_urim, profiles_file):
    from surrogatekit.http_fetch import HttpFetcher
    from surrogatekit.memento_client import resolve_memento
    from surrogatekit.profiles import load_profiles

    return resolve_memento(cnn_urim, HttpFetcher(timeout=5), load_profiles(profiles_file))


@pytest.fixture(scope="session")
def cnn_urim(mock_archive):
    return f"{mock_archive.base_url}/{CNN_COLLECTION_ID}/{CNN_DT14}/{CNN_URI_R}"


@pytest.fixture(scope="session")
def tiny_urim(mock_archive):
    return f"{mock_archive.base_url}/web/20200101000000/http://tiny.example/words.html"
