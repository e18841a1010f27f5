"""On-disk result cache.

Entries are JSON files named by the hash of (operation, group, canonical
input, code version).  Values are the exact rendered output, so a hit is
byte-identical to recomputation.  Writes go to a temp file and are renamed
into place.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

from . import __version__

ENV_VAR = "GENGRAPH_CACHE_DIR"


class CacheError(OSError):
    """Cache directory could not be read or written."""


def default_cache_dir() -> Path:
    if os.environ.get(ENV_VAR):
        return Path(os.environ[ENV_VAR])
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "gengraph"


@dataclass(frozen=True)
class CacheEntry:
    key: str
    request: dict
    version: str
    value: str
    created_at: float

    def to_json(self) -> dict:
        return {"key": self.key, "request": self.request, "version": self.version,
                "value": self.value, "created_at": self.created_at}


def request_key(request: dict, version: str = __version__) -> str:
    blob = json.dumps({"request": request, "version": version}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class ResultCache:
    def __init__(self, root: str | os.PathLike | None = None, version: str = __version__):
        self.root = Path(root) if root is not None else default_cache_dir()
        self.version = version

    def _path(self, key: str) -> Path:
        return self.root / f"{key}.json"

    def get(self, request: dict) -> str | None:
        path = self._path(request_key(request, self.version))
        try:
            data = json.loads(path.read_text())
        except FileNotFoundError:
            return None
        except (OSError, json.JSONDecodeError) as exc:
            raise CacheError(f"unreadable cache entry {path}: {exc}") from exc
        return data["value"]

    def put(self, request: dict, value: str) -> CacheEntry:
        key = request_key(request, self.version)
        entry = CacheEntry(key, request, self.version, value, time.time())
        try:
            self.root.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                json.dump(entry.to_json(), fh, sort_keys=True)
            os.replace(tmp, self._path(key))
        except OSError as exc:
            raise CacheError(f"cannot write cache entry under {self.root}: {exc}") from exc
        return entry

    def entries(self) -> list[CacheEntry]:
        if not self.root.exists():
            return []
        out = []
        for path in sorted(self.root.glob("*.json")):
            try:
                d = json.loads(path.read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise CacheError(f"unreadable cache entry {path}: {exc}") from exc
            out.append(CacheEntry(d["key"], d["request"], d["version"], d["value"], d["created_at"]))
        return out

    def stats(self) -> dict:
        files = list(self.root.glob("*.json")) if self.root.exists() else []
        return {"directory": str(self.root), "entries": len(files),
                "bytes": sum(f.stat().st_size for f in files)}

    def clear(self) -> int:
        files = list(self.root.glob("*.json")) if self.root.exists() else []
        for f in files:
            try:
                f.unlink()
            except OSError as exc:
                raise CacheError(f"cannot remove {f}: {exc}") from exc
        return len(files)

    def audit(self, recompute, sample: int | None = None) -> list[dict]:
        """Recompute entries (all, or the first ``sample`` by key) and compare byte-exactly."""
        results = []
        entries = [e for e in self.entries() if e.version == self.version]
        for e in entries[:sample] if sample else entries:
            fresh = recompute(e.request)
            results.append({"key": e.key, "request": e.request, "match": fresh == e.value})
        return results
