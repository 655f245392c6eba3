"""Service configuration."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 5550
    archive_profiles_path: str | None = None
    timegate_base: str | None = None  # TimeGate for image/favicon mementoization
    aggregator_base: str = "http://timetravel.mementoweb.org"
    renderer_command: str | None = None  # None -> bundled stub renderer
    fetch_timeout: float = 30.0
    cache_capacity: int = 64
    cache_ttl: float = 300.0
    static_dir: str | None = None  # extra UI assets served under /
    service_base: str | None = None  # external base URL; derived when None
    user_agent: str | None = None

    def base_url(self):
        return self.service_base or f"http://{self.host}:{self.port}"
