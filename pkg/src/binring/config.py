"""Run configuration shared by the CLI and the experiment scripts."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields

CACHE_ENV = "BINRING_CACHE_DIR"
FORMATS = ("table", "json", "csv")


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    group: str | None = None
    n: int | None = None
    t: int | None = None
    input: str | None = None
    bin_op: str | None = None
    max_degree: int | None = None
    trunc: str = "auto"
    format: str = "table"
    oracle: bool = False
    cache_dir: str | None = None
    jobs: int = 1

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")
        if self.trunc != "auto":
            int(self.trunc)
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")

    @property
    def fixed_trunc(self) -> int | None:
        return None if self.trunc == "auto" else int(self.trunc)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ValueError(f"unknown config keys {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        return cls.from_dict(json.loads(text))

    def semantic_key(self) -> dict:
        """Fields that determine the result (output format and execution knobs excluded)."""
        d = self.to_dict()
        for k in ("format", "cache_dir", "jobs"):
            d.pop(k)
        return d

    @staticmethod
    def default_cache_dir() -> str | None:
        return os.environ.get(CACHE_ENV) or None
