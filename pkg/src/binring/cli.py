"""Command-line front end: ``python -m binring <subcommand> ...``.

Exit codes: 0 success, 2 bad input, 3 truncation instability, 4 violated
invariant in the input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from binring import binomial
from binring.binomial import BinElement
from binring.cache import ResultCache
from binring.config import FORMATS, RunConfig
from binring.em import em_cohomology_report
from binring.errors import BinringError, InvariantViolation, TruncationUnstable
from binring.fibration import fibration_cohomology, scene_from_json
from binring.linalg import FgAbGroup, IntMatrix, cokernel_structure, smith_normal_form
from binring.torsion import cyclotomic_phi_oracle, phi

EXIT_OK, EXIT_PARSE, EXIT_UNSTABLE, EXIT_INVARIANT = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ParseError(message)


class _ParseError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="binring", description="Exact binomial-ring cohomology workbench.")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="table")
    common.add_argument("--cache", dest="cache_dir", default=None,
                        help="result cache directory (default: $BINRING_CACHE_DIR)")
    common.add_argument("--jobs", type=int, default=1)
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    em = sub.add_parser("em", parents=[common], help="H^*(K(A, n); Z)")
    em.add_argument("--group", required=True)
    em.add_argument("--n", type=int, required=True)
    em.add_argument("--max-degree", type=int, required=True)
    em.add_argument("--trunc", default="auto")

    ph = sub.add_parser("phi", parents=[common], help="torsion functor of a finite group")
    ph.add_argument("--group", required=True)
    ph.add_argument("--t", type=int, required=True)
    ph.add_argument("--oracle", action="store_true", help="also run the cyclotomic model (A = Z/p)")

    fb = sub.add_parser("fibration", parents=[common], help="cohomology of a torus fibration scene")
    fb.add_argument("--input", required=True)
    fb.add_argument("--max-degree", type=int, required=True)
    fb.add_argument("--trunc", default="auto")

    bn = sub.add_parser("bin", parents=[common], help="binomial algebra operations on JSON")
    bn.add_argument("bin_op", choices=("expand", "mul", "comul", "compose"))
    bn.add_argument("--input", default="-")

    sn = sub.add_parser("snf", parents=[common], help="Smith normal form of a JSON matrix")
    sn.add_argument("--input", default="-")
    return p


def parse_config(argv: Sequence[str]) -> RunConfig:
    ns = build_parser().parse_args(list(argv))
    data = {k: v for k, v in vars(ns).items() if v is not None}
    if "max_degree" in data and data["max_degree"] < 0:
        raise _ParseError("--max-degree must be non-negative")
    if "trunc" in data and data["trunc"] != "auto":
        try:
            if int(data["trunc"]) < 0:
                raise ValueError
        except ValueError:
            raise _ParseError("--trunc must be 'auto' or a non-negative integer")
    if data.get("cache_dir") is None:
        data["cache_dir"] = RunConfig.default_cache_dir()
    if data.get("jobs", 1) < 1:
        raise _ParseError("--jobs must be at least 1")
    return RunConfig(**data)


# ----------------------------------------------------------------------
# computations (return JSON-ready dicts)
# ----------------------------------------------------------------------

def _group_entry(G: FgAbGroup, **extra) -> dict:
    return {"free_rank": G.free_rank, "torsion": list(G.invariant_factors), "human": str(G), **extra}


def _em_degree(args):
    group, n, i, trunc = args
    res = em_cohomology_report(FgAbGroup.parse(group), n, i, trunc)
    return _group_entry(res.group, trunc=res.trunc, checked_trunc=res.checked_trunc)


def _read_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def compute(cfg: RunConfig, data=None) -> dict:
    """Run one subcommand; ``data`` is the already-parsed input document, if any."""
    if data is None and cfg.subcommand in ("fibration", "snf", "bin"):
        data = _read_json(cfg.input)
    if cfg.subcommand == "em":
        FgAbGroup.parse(cfg.group)
        tasks = [(cfg.group, cfg.n, i, cfg.fixed_trunc) for i in range(cfg.max_degree + 1)]
        if cfg.jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
                rows = list(pool.map(_em_degree, tasks))
        else:
            rows = [_em_degree(a) for a in tasks]
        return {str(i): row for i, row in enumerate(rows)}
    if cfg.subcommand == "phi":
        A = FgAbGroup.parse(cfg.group)
        out = {"phi": _group_entry(phi(A, cfg.t))}
        if cfg.oracle:
            if A.free_rank or len(A.invariant_factors) != 1 or not binomial.is_prime(A.invariant_factors[0]):
                raise _ParseError("--oracle needs a group of the form Z/p")
            oracle = cyclotomic_phi_oracle(A.invariant_factors[0], cfg.t)
            out["oracle"] = _group_entry(oracle)
            out["agree"] = oracle == phi(A, cfg.t)
        return out
    if cfg.subcommand == "fibration":
        E = scene_from_json(data)
        rows = {}
        for i in range(cfg.max_degree + 1):
            res = fibration_cohomology(E, i, cfg.fixed_trunc)
            rows[str(i)] = _group_entry(res.group, trunc=res.trunc, checked_trunc=res.checked_trunc)
        return rows
    if cfg.subcommand == "snf":
        M = IntMatrix.from_json(data)
        D = smith_normal_form(M).diagonal
        return {"diagonal": [str(d) for d in D], "rank": len(D), "cokernel": _group_entry(cokernel_structure(M))}
    if cfg.subcommand == "bin":
        return _bin(cfg.bin_op, data)
    raise _ParseError(f"unknown subcommand {cfg.subcommand!r}")


def _bin(op: str, data: dict) -> dict:
    if op == "expand":
        # ordinary monomial coordinates -> binomial basis
        r, t = int(data["rank"]), int(data["trunc"])
        mons = {tuple(int(x) for x in k.split(",")) if k else (): int(c) for k, c in data["coords"].items()}
        return binomial.sym_to_bin(mons, r, t).to_json()
    if op == "mul":
        a, b = BinElement.from_json(data["a"]), BinElement.from_json(data["b"])
        return binomial.multiply(a, b).to_json()
    if op == "comul":
        e = BinElement.from_json(data)
        tensor = binomial.comultiply(e)
        return {"rank": e.rank, "trunc": e.trunc,
                "coords": {f"{','.join(map(str, k))}|{','.join(map(str, l))}": str(c)
                           for (k, l), c in sorted(tensor.items())}}
    if op == "compose":
        M = binomial.monad_compose(int(data["rank"]), int(data["inner"]), int(data["outer"]))
        return M.to_json()
    raise _ParseError(f"unknown bin operation {op!r}")


# ----------------------------------------------------------------------
# rendering
# ----------------------------------------------------------------------

def render(cfg: RunConfig, result: dict) -> str:
    if cfg.format == "json":
        return json.dumps(result, sort_keys=True, indent=2)
    degree_keyed = cfg.subcommand in ("em", "fibration")
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if degree_keyed:
            w.writerow(["degree", "free_rank", "torsion", "human", "trunc", "checked_trunc"])
            for i in sorted(result, key=int):
                r = result[i]
                w.writerow([i, r["free_rank"], " ".join(map(str, r["torsion"])), r["human"],
                            r["trunc"], r["checked_trunc"]])
        else:
            w.writerow(["key", "value"])
            for k in sorted(result):
                w.writerow([k, json.dumps(result[k], sort_keys=True)])
        return buf.getvalue().rstrip("\n")
    lines = []
    if degree_keyed:
        for i in sorted(result, key=int):
            r = result[i]
            check = f", agrees at t={r['checked_trunc']}" if r["checked_trunc"] is not None else ""
            lines.append(f"H^{i} = {r['human']:<16} (t={r['trunc']}{check})  {json.dumps(_plain(r))}")
    elif cfg.subcommand == "phi":
        lines.append(f"Phi^{cfg.t}({cfg.group}) = {result['phi']['human']}  {json.dumps(_plain(result['phi']))}")
        if "oracle" in result:
            lines.append(f"cyclotomic model   = {result['oracle']['human']}  agree={result['agree']}")
    elif cfg.subcommand == "snf":
        lines.append("D = (" + ", ".join(result["diagonal"]) + ")")
        lines.append(f"cokernel = {result['cokernel']['human']}  {json.dumps(_plain(result['cokernel']))}")
    else:
        lines.append(json.dumps(result, sort_keys=True))
    return "\n".join(lines)


def _plain(entry: dict) -> dict:
    return {"free_rank": entry["free_rank"], "torsion": entry["torsion"]}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except _ParseError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_PARSE
    try:
        cache = ResultCache(cfg.cache_dir) if cfg.cache_dir and cfg.subcommand != "bin" else None
        payload = cfg.semantic_key()
        data = _read_json(cfg.input) if cfg.input else None
        if data is not None:
            payload["input_content"] = data
        if cfg.input == "-":
            cache = None
        result = cache.get(payload) if cache else None
        if result is None:
            result = compute(cfg, data)
            if cache:
                cache.put(payload, result)
    except TruncationUnstable as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_UNSTABLE
    except InvariantViolation as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INVARIANT
    except (_ParseError, BinringError, ValueError, KeyError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_PARSE
    print(render(cfg, result), file=stdout)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
