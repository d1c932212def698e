"""Content-addressed result cache on disk."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile

ALGORITHM_VERSION = "binring-1"


def cache_key(payload) -> str:
    blob = json.dumps({"version": ALGORITHM_VERSION, "payload": payload}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class ResultCache:
    def __init__(self, directory: str):
        self.directory = directory
        os.makedirs(directory, exist_ok=True)

    def _path(self, key: str) -> str:
        return os.path.join(self.directory, f"{key}.json")

    def get(self, payload):
        try:
            with open(self._path(cache_key(payload))) as fh:
                return json.load(fh)["result"]
        except (OSError, ValueError, KeyError):
            return None

    def put(self, payload, result) -> None:
        path = self._path(cache_key(payload))
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump({"payload": payload, "result": result}, fh, sort_keys=True)
        os.replace(tmp, path)
