"""Registered-domain extraction for archive naming and favicon lookups.

Carries a small bundled subset of the public suffix list covering the
multi-label suffixes that web archives commonly live under. Hosts under
an unlisted suffix fall back to the last two labels, which is correct
for all single-label TLDs.
"""

from urllib.parse import urlsplit

# multi-label public suffixes; single-label TLDs need no listing
_MULTI_LABEL_SUFFIXES = {
    "ac.uk", "co.uk", "gov.uk", "ltd.uk", "me.uk", "net.uk", "nhs.uk",
    "org.uk", "plc.uk", "sch.uk",
    "com.au", "net.au", "org.au", "edu.au", "gov.au", "id.au",
    "co.nz", "net.nz", "org.nz", "govt.nz", "ac.nz",
    "co.jp", "ne.jp", "or.jp", "ac.jp", "go.jp", "ad.jp",
    "com.br", "net.br", "org.br", "gov.br",
    "com.cn", "net.cn", "org.cn", "gov.cn", "edu.cn",
    "com.mx", "org.mx", "gob.mx",
    "co.in", "net.in", "org.in", "gov.in", "ac.in",
    "co.za", "org.za", "web.za", "gov.za", "ac.za",
    "co.kr", "or.kr", "go.kr", "ac.kr",
    "com.tw", "org.tw", "gov.tw",
    "com.sg", "org.sg", "gov.sg", "edu.sg",
    "com.hk", "org.hk", "gov.hk",
    "com.ar", "org.ar", "gob.ar",
    "com.tr", "org.tr", "gov.tr",
}


def _is_ip(host):
    parts = host.split(".")
    return len(parts) == 4 and all(p.isdigit() and int(p) < 256 for p in parts)


def registered_domain(host_or_uri):
    """Registered (organizational) domain of a host or absolute URI.

    'wayback.archive-it.org' -> 'archive-it.org';
    'www.webarchive.org.uk' -> 'webarchive.org.uk'.
    IP addresses and single-label hosts are returned unchanged.
    """
    host = host_or_uri
    if "//" in host_or_uri or host_or_uri.startswith(("http:", "https:")):
        host = urlsplit(host_or_uri).hostname or host_or_uri
    host = host.strip(".").lower()
    if not host or _is_ip(host) or ":" in host:
        return host
    labels = host.split(".")
    if len(labels) < 2:
        return host
    # longest listed suffix wins
    for take in (3, 2):
        if len(labels) > take and ".".join(labels[-take:]) in _MULTI_LABEL_SUFFIXES:
            return ".".join(labels[-(take + 1):])
    if ".".join(labels[-2:]) in _MULTI_LABEL_SUFFIXES:
        return host if len(labels) == 2 else ".".join(labels[-3:])
    return ".".join(labels[-2:])


def archive_name(urim):
    """Uppercase registered domain of a URI-M, the card's archive label."""
    return registered_domain(urim).upper()
