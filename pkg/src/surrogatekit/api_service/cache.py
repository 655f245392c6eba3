"""Bounded in-memory cache with TTL, safe under concurrent handlers.

One story render issues many endpoint calls for the same URI-M; the
cache keeps the resolved memento (and its image ranking) so the archive
is fetched once per URI-M, not once per endpoint.
"""

from __future__ import annotations

import threading
import time
from collections import OrderedDict


class TtlCache:
    def __init__(self, capacity=64, ttl=300.0, clock=time.monotonic):
        self.capacity = capacity
        self.ttl = ttl
        self._clock = clock
        self._lock = threading.Lock()
        self._entries = OrderedDict()  # key -> (expires_at, value)

    def get(self, key):
        with self._lock:
            entry = self._entries.get(key)
            if entry is None:
                return None
            expires_at, value = entry
            if self._clock() >= expires_at:
                del self._entries[key]
                return None
            self._entries.move_to_end(key)
            return value

    def put(self, key, value):
        with self._lock:
            self._entries[key] = (self._clock() + self.ttl, value)
            self._entries.move_to_end(key)
            while len(self._entries) > self.capacity:
                self._entries.popitem(last=False)

    def get_or_create(self, key, factory):
        value = self.get(key)
        if value is None:
            value = factory()
            self.put(key, value)
        return value

    def __len__(self):
        with self._lock:
            return len(self._entries)
