import random
from datetime import datetime, timezone

import pytest
from hypothesis import given, strategies as st

from surrogatekit.errors import MalformedTimeMap, NotAMemento
from surrogatekit.http_fetch import HttpFetcher
from surrogatekit.memento_client import (
    build_timetravel_uri,
    detect_memento,
    derive_raw_urim,
    format_dt14,
    format_http_datetime,
    negotiate_datetime,
    parse_dt14,
    parse_http_datetime,
    parse_timemap,
)
from surrogatekit.profiles import DEFAULT_PROFILES, load_profiles

CNN_URIM = "https://wayback.archive-it.org/2358/20110211072257/http://news.blogs.cnn.com/category/world/egypt-world-latest-news/"
CNN_URI_R = "http://news.blogs.cnn.com/category/world/egypt-world-latest-news/"


def utc(*args):
    return datetime(*args, tzinfo=timezone.utc)


# --- detection ---

def test_detect_memento_reads_headers(fake_fetcher):
    fake_fetcher.add(
        CNN_URIM,
        body=b"<html></html>",
        headers={
            "Memento-Datetime": "Fri, 11 Feb 2011 07:22:57 GMT",
            "Link": f'<{CNN_URI_R}>; rel="original"',
            "Content-Type": "text/html",
        },
    )
    record = detect_memento(CNN_URIM, fake_fetcher)
    assert record.uri_r == CNN_URI_R
    assert record.memento_datetime == utc(2011, 2, 11, 7, 22, 57)
    assert record.archive_domain == "archive-it.org"


def test_detect_memento_without_header_raises(fake_fetcher):
    fake_fetcher.add("http://example.org/page", body=b"<html></html>")
    with pytest.raises(NotAMemento):
        detect_memento("http://example.org/page", fake_fetcher)


def test_detect_every_manifest_capture(mock_archive):
    # the manifest is the oracle: every capture must round-trip identity
    fetcher = HttpFetcher(timeout=5)
    checked = 0
    for uri_r, original in mock_archive.manifest.originals.items():
        resolved_uri_r = mock_archive.substitute(uri_r)
        for capture in original.captures:
            urim = mock_archive.urim_for(
                resolved_uri_r, capture.datetime14, collection_id=original.collection_id
            )
            record = detect_memento(urim, fetcher)
            assert record.uri_r == resolved_uri_r
            assert format_dt14(record.memento_datetime) == capture.datetime14
            checked += 1
    assert checked >= 12


# --- raw URI derivation ---

def test_derive_raw_urim_wayback_example():
    urim = "https://www.webarchive.org.uk/wayback/archive/20090522221251/http://blasttheory.co.uk/"
    expected = "https://www.webarchive.org.uk/wayback/archive/20090522221251im_/http://blasttheory.co.uk/"
    assert derive_raw_urim(urim, DEFAULT_PROFILES) == expected


def test_derive_raw_urim_no_datetime_segment():
    assert derive_raw_urim("https://archive.example/just/a/path", DEFAULT_PROFILES) is None


def test_derive_raw_urim_preserves_datetime_segment():
    rng = random.Random(42)
    for _ in range(50):
        dt14 = "20{:02d}{:02d}{:02d}{:02d}{:02d}{:02d}".format(
            rng.randrange(100), rng.randrange(1, 13), rng.randrange(1, 29),
            rng.randrange(24), rng.randrange(60), rng.randrange(60),
        )
        urim = f"https://web.archive.org/web/{dt14}/http://site-{rng.randrange(999)}.example/"
        raw = derive_raw_urim(urim, DEFAULT_PROFILES)
        assert raw is not None
        # string oracle: the 14-digit segments must be identical
        assert dt14 in raw
        assert raw.replace(f"{dt14}im_", dt14) == urim


def test_derive_raw_urim_idempotent():
    urim = "https://web.archive.org/web/20110211072257/http://a.example/"
    once = derive_raw_urim(urim, DEFAULT_PROFILES)
    twice = derive_raw_urim(once, DEFAULT_PROFILES)
    assert once == twice


def test_profiles_load_from_config(tmp_path):
    path = tmp_path / "profiles.json"
    path.write_text(
        '{"profiles": [{"name": "x", "domain_pattern": "*.example", "raw_token": "raw_"}]}'
    )
    profiles = load_profiles(str(path))
    assert profiles[0].name == "x"
    assert profiles[0].raw_urim("http://a.example/20110211072257/http://b/") == (
        "http://a.example/20110211072257raw_/http://b/"
    )


# --- datetime negotiation ---

def test_negotiate_nearest_capture(mock_archive):
    fetcher = HttpFetcher(timeout=5)
    urim = negotiate_datetime(
        "http://negotiate.example/page.html",
        utc(2011, 3, 1),
        f"{mock_archive.base_url}/timegate",
        fetcher,
    )
    assert urim == mock_archive.urim_for("http://negotiate.example/page.html", "20110211000000")


def test_negotiate_exact_match(mock_archive):
    fetcher = HttpFetcher(timeout=5)
    urim = negotiate_datetime(
        "http://negotiate.example/page.html",
        utc(2012, 5, 10),
        f"{mock_archive.base_url}/timegate",
        fetcher,
    )
    assert urim.startswith(f"{mock_archive.base_url}/web/20120510000000/")


def test_negotiate_unknown_original_absent(mock_archive):
    fetcher = HttpFetcher(timeout=5)
    urim = negotiate_datetime(
        "http://unknown.example/",
        utc(2012, 5, 10),
        f"{mock_archive.base_url}/timegate",
        fetcher,
    )
    assert urim is None


# --- TimeMap parsing ---

def _timemap_text(entries, uri_r="http://a.example/", shuffle_with=None):
    lines = [
        f'<{uri_r}>; rel="original"',
        '<http://arch.example/timemap/link/http://a.example/>; rel="self"',
    ]
    memento_lines = [
        f'<http://arch.example/web/{dt14}/{uri_r}>; rel="memento"; '
        f'datetime="{format_http_datetime(parse_dt14(dt14))}"'
        for dt14 in entries
    ]
    if shuffle_with is not None:
        shuffle_with.shuffle(memento_lines)
    return ",\n".join(lines + memento_lines)


def test_parse_timemap_three_captures():
    stats = parse_timemap(_timemap_text(["20090101000000", "20110606060606", "20150301120000"]))
    assert stats.memento_count == 3
    assert format_dt14(stats.first_memento_datetime) == "20090101000000"
    assert format_dt14(stats.last_memento_datetime) == "20150301120000"
    assert stats.first_urim.startswith("http://arch.example/web/20090101000000/")
    assert stats.uri_r == "http://a.example/"


def test_parse_timemap_singleton():
    stats = parse_timemap(_timemap_text(["20110606060606"]))
    assert stats.memento_count == 1
    assert stats.first_urim == stats.last_urim


def test_parse_timemap_order_invariant():
    entries = ["20090101000000", "20110606060606", "20150301120000", "20100101000000"]
    sorted_stats = parse_timemap(_timemap_text(entries))
    for seed in range(10):
        shuffled = parse_timemap(_timemap_text(entries, shuffle_with=random.Random(seed)))
        assert shuffled == sorted_stats


def test_parse_timemap_malformed():
    with pytest.raises(MalformedTimeMap):
        parse_timemap("this is not link format")
    with pytest.raises(MalformedTimeMap):
        parse_timemap('<http://a/>; rel="memento"')  # memento without datetime


def test_parse_timemap_from_mock_server(mock_archive):
    fetcher = HttpFetcher(timeout=5)
    response = fetcher.fetch(
        f"{mock_archive.base_url}/timemap/link/http://blasttheory.co.uk/"
    )
    stats = parse_timemap(response.body)
    assert stats.memento_count == 3
    assert format_dt14(stats.first_memento_datetime) == "20090522221251"
    assert format_dt14(stats.last_memento_datetime) == "20150815063000"


# --- Time Travel link ---

def test_timetravel_uri_cnn_example():
    uri = build_timetravel_uri(
        CNN_URI_R, utc(2011, 2, 11, 7, 22, 57), "http://timetravel.mementoweb.org"
    )
    assert uri == (
        "http://timetravel.mementoweb.org/list/20110211072257Z/"
        "http://news.blogs.cnn.com/category/world/egypt-world-latest-news/"
    )


def test_timetravel_uri_round_number():
    uri = build_timetravel_uri(
        "http://a.example/", utc(2000, 1, 1), "http://tt.example"
    )
    assert uri == "http://tt.example/list/20000101000000Z/http://a.example/"


@given(
    st.datetimes(
        min_value=datetime(1996, 1, 1),
        max_value=datetime(2035, 12, 31),
    )
)
def test_timetravel_uri_datetime_parses_back(dt):
    dt = dt.replace(tzinfo=timezone.utc, microsecond=0)
    uri = build_timetravel_uri("http://a.example/", dt, "http://tt.example")
    segment = uri[len("http://tt.example/list/"):].split("Z/")[0]
    assert parse_dt14(segment) == dt


# --- datetime forms round-trip ---

@given(
    st.datetimes(min_value=datetime(1990, 1, 1), max_value=datetime(2040, 1, 1))
)
def test_datetime_forms_round_trip(dt):
    dt = dt.replace(tzinfo=timezone.utc, microsecond=0)
    assert parse_dt14(format_dt14(dt)) == dt
    assert parse_http_datetime(format_http_datetime(dt)) == dt
