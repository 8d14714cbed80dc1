"""Result cache: versioned JSON entries keyed by task + parameters.

Entries are stored one file per key under the cache directory (the
QKRON_CACHE_DIR environment variable, or ~/.cache/qkron).  Keys hash the
task name, its parameters, and the code version, so a version bump
invalidates every entry.  Values are JSON with exact coefficient strings;
corrupt entries are dropped and recomputed with a warning.
"""

from __future__ import annotations

import hashlib
import json
import os
import sys
from pathlib import Path

CACHE_VERSION = "1"


def cache_dir(override=None):
    if override:
        return Path(override)
    env = os.environ.get("QKRON_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "qkron"


def _key(task, params):
    blob = json.dumps({"task": task, "params": params,
                       "version": CACHE_VERSION}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def lookup(task, params, directory=None):
    path = cache_dir(directory) / f"{_key(task, params)}.json"
    if not path.exists():
        return None
    try:
        with open(path) as fh:
            entry = json.load(fh)
        if entry.get("version") != CACHE_VERSION:
            return None
        return entry["result"]
    except (json.JSONDecodeError, KeyError, OSError) as exc:
        print(f"warning: dropping corrupt cache entry {path.name}: {exc}",
              file=sys.stderr)
        try:
            path.unlink()
        except OSError:
            pass
        return None


def store(task, params, result, provenance=None, directory=None):
    d = cache_dir(directory)
    d.mkdir(parents=True, exist_ok=True)
    path = d / f"{_key(task, params)}.json"
    entry = {
        "version": CACHE_VERSION,
        "task": task,
        "params": params,
        "provenance": provenance or {},
        "result": result,
    }
    tmp = path.with_suffix(".tmp")
    with open(tmp, "w") as fh:
        json.dump(entry, fh, sort_keys=True, indent=1)
    tmp.replace(path)
    return path


def gc(directory=None):
    """Drop entries whose version is stale; returns (kept, removed)."""
    d = cache_dir(directory)
    kept = removed = 0
    if not d.exists():
        return kept, removed
    for path in d.glob("*.json"):
        try:
            with open(path) as fh:
                entry = json.load(fh)
            ok = entry.get("version") == CACHE_VERSION
        except (json.JSONDecodeError, OSError):
            ok = False
        if ok:
            kept += 1
        else:
            path.unlink()
            removed += 1
    return kept, removed
