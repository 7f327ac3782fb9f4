"""Residue-cycle store keyed by (canonical sequence text, modulus).

Entries live in memory and, unless disabled, as one JSON file each under
``$IDEALTOP_CACHE_DIR`` (default ``~/.cache/idealtop``).  Files are written to
a temporary name and moved into place, so concurrent processes only ever see
whole entries.  A cache hit returns exactly what recomputation would.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import threading
from pathlib import Path

SCHEMA_VERSION = 1


def default_dir() -> Path:
    env = os.environ.get("IDEALTOP_CACHE_DIR")
    return Path(env) if env else Path.home() / ".cache" / "idealtop"


class ResidueCache:
    def __init__(self):
        self.enabled = True
        self.persistent = True
        self._mem: dict = {}
        self._lock = threading.Lock()

    def _path(self, key: str) -> Path:
        return default_dir() / (hashlib.sha256(key.encode()).hexdigest() + ".json")

    def get(self, u, q: int):
        if not self.enabled:
            return None
        key = f"{u}|{q}"
        with self._lock:
            if key in self._mem:
                return self._mem[key]
        if not self.persistent:
            return None
        try:
            doc = json.loads(self._path(key).read_text())
        except (OSError, ValueError):
            return None
        if doc.get("schema_version") != SCHEMA_VERSION or doc.get("key") != key:
            return None
        hit = (tuple(doc["preperiod"]), tuple(doc["period"]))
        with self._lock:
            self._mem[key] = hit
        return hit

    def put(self, u, q: int, pre, per) -> None:
        if not self.enabled:
            return
        key = f"{u}|{q}"
        with self._lock:
            self._mem[key] = (tuple(pre), tuple(per))
        if not self.persistent:
            return
        path = self._path(key)
        doc = {"schema_version": SCHEMA_VERSION, "key": key, "preperiod": list(pre), "period": list(per)}
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                json.dump(doc, fh)
            os.replace(tmp, path)
        except OSError:
            pass  # the store is an optimization only

    def clear_memory(self) -> None:
        with self._lock:
            self._mem.clear()


CACHE = ResidueCache()
