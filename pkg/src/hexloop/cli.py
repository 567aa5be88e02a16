"""Command-line interface: ``hexloop <command> ...``.

Exit status is 2 for usage errors, 1 when ``verify`` finds a failing check
and 0 otherwise.  When ``HEXLOOP_CACHE_DIR`` is set, command outputs are
stored there as JSON, keyed by the command line and a checksum of the
package sources.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable

from .boundary import Boundary, BoundarySizeMismatch
from .hfpl import enumerate_hfpl, ordinary_table
from .lattice import InvalidSize, SizeVector, build_grid
from .oriented import enumerate_oriented, oriented_table, weighted_count
from .puzzles import LrInput, ShapeError, enumerate_hexagonal, enumerate_triangular, lr_oracle
from .qring import eval_at_rho, recover_restricted
from .tangle import CountMismatch, endpoints, enumerate_tangles, to_tangle
from .theorems import ALL_CHECKS, SweepScope, excess, verify
from .words import LengthMismatch, WordParseError, parse_partition, parse_word


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with status 2 as well
        raise UsageError(message)


# --------------------------------------------------------------- caching


@lru_cache(maxsize=1)
def code_version() -> str:
    h = hashlib.sha256()
    for path in sorted(Path(__file__).parent.glob("*.py")):
        h.update(path.name.encode())
        h.update(path.read_bytes())
    return h.hexdigest()[:16]


@dataclass(frozen=True)
class ResultCache:
    directory: Path

    @classmethod
    def from_env(cls) -> "ResultCache | None":
        d = os.environ.get("HEXLOOP_CACHE_DIR")
        return cls(Path(d)) if d else None

    def _path(self, key: list) -> Path:
        digest = hashlib.sha256(json.dumps(key, sort_keys=True).encode()).hexdigest()
        return self.directory / f"{digest}.json"

    def get(self, key: list) -> tuple[int, str] | None:
        path = self._path(key)
        try:
            data = json.loads(path.read_text())
        except (OSError, ValueError):
            return None
        if data.get("version") != code_version() or data.get("key") != key:
            return None
        return int(data["status"]), data["output"]

    def put(self, key: list, status: int, output: str) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        payload = {"version": code_version(), "key": key, "status": status, "output": output}
        tmp = self._path(key).with_suffix(".tmp")
        tmp.write_text(json.dumps(payload))
        tmp.replace(self._path(key))


# --------------------------------------------------------------- helpers


def _size(text: str) -> SizeVector:
    return SizeVector.parse(text)


def _boundary(text: str, size: SizeVector | None = None) -> Boundary:
    bd = Boundary.parse(text)
    if size is not None:
        bd.check_size(size)
    return bd


def _configs_json(kind: str, size: SizeVector, bd: Boundary | None):
    if kind == "hfpl":
        for c in enumerate_hfpl(size, bd):
            yield c.to_json()
    elif kind == "oriented":
        for o in enumerate_oriented(size, bd):
            yield o.to_json()
    else:
        if bd is not None:
            for pt in enumerate_tangles(bd):
                yield pt.to_json()
        else:
            for o in enumerate_oriented(size):
                yield to_tangle(o).to_json()


# -------------------------------------------------------------- commands


def cmd_grid(args, out) -> int:
    out.write(build_grid(_size(args.size)).dumps() + "\n")
    return 0


def cmd_enumerate(args, out) -> int:
    size = _size(args.size)
    bd = _boundary(args.boundary, size) if args.boundary else None
    if args.format == "json":
        for item in _configs_json(args.kind, size, bd):
            out.write(json.dumps(item, sort_keys=True) + "\n")
        return 0
    writer = csv.writer(out, lineterminator="\n")
    if args.kind == "tangle":
        writer.writerow(["blue", "red"])
        for item in _configs_json(args.kind, size, bd):
            writer.writerow([json.dumps(item["blue"]), json.dumps(item["red"])])
    else:
        writer.writerow(["boundary", "states"])
        table = ordinary_table(size) if args.kind == "hfpl" else oriented_table(size)
        rows = table.confs if args.kind == "hfpl" else table.states
        for key, row in zip(table.keys, rows):
            if bd is None or int(key) == bd.key():
                writer.writerow([str(Boundary.from_key(size, int(key))), "".join(map(str, row))])
    return 0


def cmd_count(args, out) -> int:
    size = _size(args.size)
    if args.kind == "hfpl":
        counts = ordinary_table(size).counts()
    else:  # tangles are counted through the bijection with oriented configurations
        counts = oriented_table(size).counts()
    if args.group_by == "boundary":
        rows = sorted((str(Boundary.from_key(size, k)), c) for k, c in counts.items())
        for name, c in rows:
            out.write(f"{name}\t{c}\n")
    else:
        out.write(f"{sum(counts.values())}\n")
    return 0


def cmd_tangle(args, out) -> int:
    bd = _boundary(args.boundary)
    ep = endpoints(bd)
    data = {
        "boundary": str(bd),
        "excess": excess(bd),
        "D": [[f"x={x}/2", y] for x, y in ep.D],
        "E": [[f"x={x}/2", y] for x, y in ep.E],
        "D_red": [[f"x={x}/2", y] for x, y in ep.D2],
        "E_red": [[f"x={x}/2", y] for x, y in ep.E2],
        "count": len(enumerate_tangles(bd)),
    }
    out.write(json.dumps(data, indent=2) + "\n")
    return 0


def cmd_puzzle(args, out) -> int:
    if args.kind == "tri":
        text = args.boundary.replace(";", ",")
        parts = [parse_word(p) for p in text.split(",")]
        if len(parts) != 3:
            raise UsageError("a triangular boundary has the form u,v;w")
        out.write(f"{enumerate_triangular(*parts)}\n")
    else:
        out.write(f"{enumerate_hexagonal(_boundary(args.boundary))}\n")
    return 0


def cmd_lr(args, out) -> int:
    inp = LrInput(parse_partition(args.lam), parse_partition(args.mu), parse_partition(args.nu))
    out.write(f"{lr_oracle(inp)}\n")
    return 0


def cmd_verify(args, out) -> int:
    checks = list(ALL_CHECKS) if not args.checks else [c.strip() for c in args.checks.split(",") if c.strip()]
    bad = [c for c in checks if c not in ALL_CHECKS]
    if bad:
        raise UsageError(f"unknown checks {bad}; choose from {', '.join(ALL_CHECKS)}")
    scope = SweepScope(max_total=args.max_total, tfpl_max=args.tfpl_max, roundtrip=args.roundtrip)
    report = verify(scope, checks)
    out.write(report.table() + "\n")
    if args.out:
        Path(args.out).write_text(report.dumps() + "\n")
    return 0 if report.ok else 1


def cmd_weighted(args, out) -> int:
    bd = _boundary(args.boundary)
    size = bd.size
    weighted = weighted_count(size, bd)
    restricted = recover_restricted(bd, lambda other: weighted_count(size, other))
    value = eval_at_rho(restricted)
    out.write(f"oriented(q)   = {weighted}\n")
    out.write(f"restricted(q) = {restricted}\n")
    if value.is_integer():
        out.write(f"recovered h   = {value.a}\n")
    else:
        out.write(f"recovered h   = {value} (not an integer)\n")
    out.write(f"enumerated h  = {ordinary_table(size).counts().get(bd.key(), 0)}\n")
    return 0


COMMANDS: dict[str, Callable] = {
    "grid": cmd_grid,
    "enumerate": cmd_enumerate,
    "count": cmd_count,
    "tangle": cmd_tangle,
    "puzzle": cmd_puzzle,
    "lr": cmd_lr,
    "verify": cmd_verify,
    "weighted": cmd_weighted,
}

# commands whose output is worth storing (the others stream large data)
CACHED = {"count", "tangle", "puzzle", "lr", "verify", "weighted"}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hexloop", description="Exact enumeration of hexagonal fully packed loop configurations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("grid", help="print the grid graph as JSON")
    g.add_argument("--size", required=True, help="K,L,M,N")

    e = sub.add_parser("enumerate", help="stream configurations")
    e.add_argument("--kind", choices=["hfpl", "oriented", "tangle"], required=True)
    e.add_argument("--size", required=True)
    e.add_argument("--boundary", help="l_T,t,r_T;r_B,b,l_B with - for the empty word")
    e.add_argument("--format", choices=["json", "csv"], default="json")

    c = sub.add_parser("count", help="count configurations")
    c.add_argument("--kind", choices=["hfpl", "oriented", "tangle"], required=True)
    c.add_argument("--size", required=True)
    c.add_argument("--group-by", choices=["boundary"], default=None)

    t = sub.add_parser("tangle", help="endpoints and number of path tangles of a boundary")
    t.add_argument("--boundary", required=True)

    z = sub.add_parser("puzzle", help="count puzzles")
    z.add_argument("--kind", choices=["tri", "hex"], required=True)
    z.add_argument("--boundary", required=True, help="u,v;w for tri, a sextuple for hex")

    lr = sub.add_parser("lr", help="Littlewood-Richardson coefficient")
    lr.add_argument("--lambda", dest="lam", required=True, help="partition such as [2,1]")
    lr.add_argument("--mu", required=True)
    lr.add_argument("--nu", required=True)

    v = sub.add_parser("verify", help="run the verification harness")
    v.add_argument("--max-total", type=int, default=8)
    v.add_argument("--tfpl-max", type=int, default=5)
    v.add_argument("--checks", default="", help="comma separated subset of: " + ", ".join(ALL_CHECKS))
    v.add_argument("--roundtrip", choices=["bulk", "all"], default="bulk")
    v.add_argument("--out", help="write the JSON report here")

    w = sub.add_parser("weighted", help="weighted count, restricted count and recovered ordinary count")
    w.add_argument("--boundary", required=True)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"hexloop: {exc}\n")
        return 2
    cache = ResultCache.from_env() if args.command in CACHED else None
    key = [args.command, sorted((k, v) for k, v in vars(args).items() if k not in ("command", "out"))]
    if cache is not None:
        hit = cache.get(key)
        if hit is not None and not getattr(args, "out", None):
            status, text = hit
            sys.stdout.write(text)
            return status
    buf = io.StringIO() if cache is not None else sys.stdout
    try:
        status = COMMANDS[args.command](args, buf)
    except (
        UsageError,
        WordParseError,
        InvalidSize,
        BoundarySizeMismatch,
        LengthMismatch,
        ShapeError,
        CountMismatch,
        ValueError,
    ) as exc:
        sys.stderr.write(f"hexloop: {exc}\n")
        return 2
    if cache is not None:
        text = buf.getvalue()
        cache.put(key, status, text)
        sys.stdout.write(text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
