"""Content-addressed on-disk result cache.

One JSON file per key.  Each file stores its payload together with a SHA-256
checksum of the canonical payload text; files whose checksum does not match
are reported and recomputed rather than trusted.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path

log = logging.getLogger(__name__)

ENV_VAR = "QHTPY_CACHE_DIR"
FORMAT_VERSION = 1


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


class ResultCache:
    def __init__(self, root: str | os.PathLike | None = None):
        root = root or os.environ.get(ENV_VAR)
        self.root = Path(root) if root else None
        self.corrupted: list[str] = []
        if self.root is not None:
            self.root.mkdir(parents=True, exist_ok=True)

    @property
    def enabled(self) -> bool:
        return self.root is not None

    def _path(self, key) -> Path:
        return self.root / f"{digest(canonical([FORMAT_VERSION, key]))}.json"

    def get(self, key):
        if self.root is None:
            return None
        path = self._path(key)
        if not path.exists():
            return None
        try:
            record = json.loads(path.read_text())
            ok = (record.get("key") == key
                  and record.get("checksum") == digest(canonical(record.get("payload"))))
        except (ValueError, AttributeError):
            ok = False
        if not ok:
            self.corrupted.append(str(path))
            log.warning("cache entry %s failed its checksum; recomputing", path.name)
            return None
        return record["payload"]

    def put(self, key, payload) -> None:
        if self.root is None:
            return
        record = {"key": key, "payload": payload, "checksum": digest(canonical(payload))}
        path = self._path(key)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(canonical(record))
        tmp.replace(path)

    def get_or_compute(self, key, compute):
        hit = self.get(key)
        if hit is not None:
            return hit
        value = compute()
        self.put(key, value)
        return value
