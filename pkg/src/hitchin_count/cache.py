"""On-disk cache of computed polynomials in canonical JSON.

Each entry is one file named by a digest of its key; writes go through a
temporary file and an atomic rename so concurrent readers never see partial data.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .polyalg import LaurentPoly
from .universal import ENGINE_VERSION

SCHEMA = "hitchin-count/v1"
ENV_VAR = "HITCHIN_COUNT_CACHE"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "hitchin-count"


def cache_key(family: str, g: int, n: int, p: int, d: int = 1, e_mod_d: int = 0) -> str:
    return f"{family}:g={g}:n={n}:p={p}:d={d}:e={e_mod_d % d}:engine={ENGINE_VERSION}"


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


@dataclass(frozen=True)
class CacheEntry:
    key: str
    value: str  # canonical JSON of the polynomial
    hash: str

    @classmethod
    def make(cls, key: str, poly: LaurentPoly) -> "CacheEntry":
        value = poly.to_json()
        return cls(key, value, digest(value))

    def to_json(self) -> str:
        return json.dumps(
            {"schema": SCHEMA, "key": self.key, "hash": self.hash, "value": json.loads(self.value)},
            sort_keys=True,
            separators=(",", ":"),
        )


class CacheMismatch(AssertionError):
    pass


class PolyCache:
    def __init__(self, root: os.PathLike | str | None = None, verify: bool = False):
        self.root = Path(root) if root is not None else default_cache_dir()
        self.verify = verify

    def path_for(self, key: str) -> Path:
        return self.root / f"{digest(key)[:32]}.json"

    def get(self, key: str) -> LaurentPoly | None:
        path = self.path_for(key)
        try:
            obj = json.loads(path.read_text())
        except (FileNotFoundError, json.JSONDecodeError):
            return None
        if obj.get("schema") != SCHEMA or obj.get("key") != key:
            return None
        try:
            poly = LaurentPoly.from_json_obj(obj["value"])
        except (KeyError, TypeError, ValueError):
            return None
        if digest(poly.to_json()) != obj.get("hash"):
            return None
        return poly

    def put(self, key: str, poly: LaurentPoly) -> CacheEntry:
        entry = CacheEntry.make(key, poly)
        self.root.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(entry.to_json())
            os.replace(tmp, self.path_for(key))
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        return entry

    def get_or_compute(self, key: str, compute) -> LaurentPoly:
        hit = self.get(key)
        if hit is not None and not self.verify:
            return hit
        fresh = compute()
        if hit is not None and hit.to_json() != fresh.to_json():
            raise CacheMismatch(f"cache entry for {key} differs from recomputation")
        if hit is None:
            self.put(key, fresh)
        return fresh
