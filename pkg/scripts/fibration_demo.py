"""Write example scene files and run the fibration subcommand on them."""

import json
import os
import tempfile
from dataclasses import dataclass

from binring.cli import compute, render
from binring.config import RunConfig
from binring.fibration import CellComplex


@dataclass
class FibrationDemo:
    euler_numbers: tuple[int, ...] = (0, 1, 2, 3)
    max_degree: int = 3
    out_dir: str | None = None


def klein_scene() -> dict:
    base = CellComplex.circle(3)
    doc = base.to_json()
    flipped = "-".join(map(str, base.cells(1)[-1]))
    doc["sheaf"] = {
        "stalks": {c["id"]: 1 for c in doc["cells"]},
        "restrictions": {f"{f}->{c}": [[-1]] if c == flipped and s > 0 else [[1]] for f, c, s in doc["incidence"]},
    }
    return doc


def sphere_bundle_scene(k: int) -> dict:
    base = CellComplex.sphere2()
    doc = base.to_json()
    doc["euler"] = {"-".join(map(str, base.cells(2)[0])): k} if k else {}
    return doc


def main(cfg: FibrationDemo = FibrationDemo()) -> None:
    out_dir = cfg.out_dir or tempfile.mkdtemp(prefix="scenes-")
    scenes = {"klein": klein_scene()}
    scenes.update({f"euler{k}": sphere_bundle_scene(k) for k in cfg.euler_numbers})
    for name, doc in scenes.items():
        path = os.path.join(out_dir, f"{name}.json")
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=1)
        run = RunConfig("fibration", input=path, max_degree=cfg.max_degree)
        print(f"# {name} ({path})")
        print(render(run, compute(run)))


if __name__ == "__main__":
    main()
