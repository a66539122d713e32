"""Saved partial questionnaires ("Restore Previous Input").

Drafts are arbitrary JSON blobs keyed by name, held in a sidecar file next
to the store so assessors can stop mid-questionnaire and pick up later,
from the CLI or the browser UI alike.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any


class UnknownDraft(KeyError):
    """No draft saved under the requested key."""


class DraftStore:
    def __init__(self, path: str | Path):
        self.path = Path(path)

    @classmethod
    def beside(cls, store_path: str | Path) -> DraftStore:
        """The conventional sidecar location for a given store file."""
        store_path = Path(store_path)
        return cls(store_path.with_name(store_path.stem + ".drafts.json"))

    def _read(self) -> dict[str, Any]:
        if not self.path.exists():
            return {}
        with self.path.open("r", encoding="utf-8") as handle:
            return json.load(handle)

    def keys(self) -> list[str]:
        return sorted(self._read())

    def get(self, key: str) -> Any:
        drafts = self._read()
        if key not in drafts:
            raise UnknownDraft(key)
        return drafts[key]

    def put(self, key: str, payload: Any) -> None:
        drafts = self._read()
        drafts[key] = payload
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, temp_name = tempfile.mkstemp(dir=self.path.parent, prefix=".drafts-")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                json.dump(drafts, handle, indent=2)
            os.replace(temp_name, self.path)
        except BaseException:
            if os.path.exists(temp_name):
                os.unlink(temp_name)
            raise

    def delete(self, key: str) -> None:
        drafts = self._read()
        if key not in drafts:
            raise UnknownDraft(key)
        del drafts[key]
        fd, temp_name = tempfile.mkstemp(dir=self.path.parent, prefix=".drafts-")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                json.dump(drafts, handle, indent=2)
            os.replace(temp_name, self.path)
        except BaseException:
            if os.path.exists(temp_name):
                os.unlink(temp_name)
            raise
