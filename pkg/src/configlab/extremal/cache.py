"""JSON results cache keyed by (mode, n, s, k)."""

from __future__ import annotations

import json
import os
from pathlib import Path

from .search import SearchRecord

ENV_VAR = "CONFIGLAB_CACHE"


def default_cache_path() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "configlab" / "results.json"


class ResultsCache:
    """Exact results are never overwritten by bounds; bounds only by better ones."""

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path is not None else default_cache_path()
        self._data: dict[str, dict] = {}
        if self.path.exists():
            with open(self.path) as fh:
                self._data = json.load(fh)

    @staticmethod
    def key(mode: str, n: int, s: int, k: int) -> str:
        return f"{mode}:{n}:{s}:{k}"

    def get(self, mode: str, n: int, s: int, k: int, exact_only: bool = True) -> SearchRecord | None:
        raw = self._data.get(self.key(mode, n, s, k))
        if raw is None:
            return None
        rec = SearchRecord.from_json(raw)
        if exact_only and not rec.exact:
            return None
        return rec

    def put(self, rec: SearchRecord) -> None:
        old = self._data.get(rec.key)
        if old is not None and (old["exact"] or (not rec.exact and old["value"] >= rec.value)):
            return
        self._data[rec.key] = rec.to_json()
        self.save()

    def save(self) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self.path.with_suffix(".tmp")
        with open(tmp, "w") as fh:
            json.dump(self._data, fh, indent=1, sort_keys=True)
        os.replace(tmp, self.path)

    def __len__(self) -> int:
        return len(self._data)
