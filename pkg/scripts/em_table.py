"""Print H^i(K(A, n); Z) for a few groups and degrees."""

from dataclasses import dataclass, field

from binring.cli import compute, render
from binring.config import RunConfig


@dataclass
class EmTable:
    cases: list[tuple[str, int, int]] = field(default_factory=lambda: [("Z", 1, 3), ("Z", 2, 6), ("Z/2", 1, 5)])
    fmt: str = "table"
    jobs: int = 1


def main(cfg: EmTable = EmTable()) -> None:
    for group, n, top in cfg.cases:
        run = RunConfig("em", group=group, n=n, max_degree=top, format=cfg.fmt, jobs=cfg.jobs)
        print(f"# K({group}, {n})")
        print(render(run, compute(run)))


if __name__ == "__main__":
    main()
