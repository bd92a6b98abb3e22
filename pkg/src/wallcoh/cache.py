"""Checksummed on-disk cache for computed cohomology tables.

Entries never survive engine revisions: the key hashes the canonical ring
presentation, the probe box, and the engine version. Corrupt entries are
evicted and recomputed; I/O failures degrade to cache-off with a warning.
"""

from __future__ import annotations

import hashlib
import json
import os


def _checksum(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def cache_key(parts: dict) -> str:
    blob = json.dumps(parts, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def cache_lookup(cache_dir: str | None, key: str, warnings: list) -> dict | None:
    if not cache_dir:
        return None
    path = os.path.join(cache_dir, f"{key}.json")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            entry = json.load(fh)
        if entry.get("checksum") != _checksum(entry.get("payload", {})):
            os.unlink(path)
            warnings.append(f"cache entry {key[:12]} failed its checksum; evicted")
            return None
        return entry["payload"]
    except FileNotFoundError:
        return None
    except (OSError, ValueError) as exc:
        warnings.append(f"cache read failed ({exc}); recomputing")
        try:
            os.unlink(path)
        except OSError:
            pass
        return None


def cache_store(cache_dir: str | None, key: str, payload: dict,
                warnings: list) -> None:
    if not cache_dir:
        return
    path = os.path.join(cache_dir, f"{key}.json")
    try:
        os.makedirs(cache_dir, exist_ok=True)
        entry = {"checksum": _checksum(payload), "payload": payload}
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(entry, fh, sort_keys=True, separators=(",", ":"))
        os.replace(tmp, path)
    except OSError as exc:
        warnings.append(f"cache write failed ({exc}); continuing without cache")
