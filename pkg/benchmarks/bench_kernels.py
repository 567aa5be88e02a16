#!/usr/bin/env python3
"""Compare the numba kernels with the plain-Python fallback.

Each backend runs in its own subprocess because HEXLOOP_NO_JIT is read at
import time.  The numba timing excludes compilation (a warm-up call runs
first).

    python3 benchmarks/bench_kernels.py [--sizes 0,2,3,1 1,2,2,2] [--repeat 3]
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from hexloop import backend_name
from hexloop.lattice import SizeVector
from hexloop.hfpl import degree_subgraphs
from hexloop.oriented import orientation_states
from hexloop.puzzles import _solutions, triangle_region

sizes = [SizeVector.parse(s) for s in sys.argv[1].split()]
repeat = int(sys.argv[2])

def best(fn):
    fn()  # warm-up, includes compilation for numba
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)

out = {"backend": backend_name(), "rows": []}
for s in sizes:
    out["rows"].append({"task": f"degree subgraphs {s}", "seconds": best(lambda: degree_subgraphs(s))})
    out["rows"].append({"task": f"orientations {s}", "seconds": best(lambda: orientation_states(s))})
n = max(x.L + x.M + x.N for x in sizes)
out["rows"].append({"task": f"puzzles side {n}", "seconds": best(lambda: _solutions(triangle_region(n)))})
print(json.dumps(out))
"""


def run(no_jit: bool, sizes: list[str], repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("HEXLOOP_NO_JIT", None)
    if no_jit:
        env["HEXLOOP_NO_JIT"] = "1"
    proc = subprocess.run(
        [sys.executable, "-c", WORKER, " ".join(sizes), str(repeat)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(proc.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", nargs="+", default=["0,2,3,1", "1,2,2,2", "0,3,4,0"])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    jit = run(False, args.sizes, args.repeat)
    py = run(True, args.sizes, args.repeat)
    print(f"{'task':<32}{'numba s':>12}{'python s':>12}{'speedup':>10}")
    for a, b in zip(jit["rows"], py["rows"]):
        ratio = b["seconds"] / a["seconds"] if a["seconds"] > 0 else float("inf")
        print(f"{a['task']:<32}{a['seconds']:>12.4f}{b['seconds']:>12.4f}{ratio:>9.1f}x")


if __name__ == "__main__":
    main()
