#!/usr/bin/env python3
"""Time the jitted kernels against the plain-Python fallback.

Each backend runs in its own interpreter because the switch
(LOTBOUND_NO_NUMBA) is read once at import time.

    python benchmarks/compare_backends.py --sizes 10,20,30 --bounds 4,8,16
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

CHILD = r"""
import json, sys
from lotbound._jit import backend
from lotbound.bench import bench_ibr, bench_ibsr
sizes, bounds, T, trials = json.loads(sys.argv[1])
out = {"backend": backend(),
       "ibr": bench_ibr(sizes, trials),
       "ibsr": bench_ibsr(bounds, T, trials)}
print(json.dumps(out))
"""


def run(no_numba: bool, payload: list) -> dict:
    env = dict(os.environ)
    env.pop("LOTBOUND_NO_NUMBA", None)
    if no_numba:
        env["LOTBOUND_NO_NUMBA"] = "1"
    res = subprocess.run([sys.executable, "-c", CHILD, json.dumps(payload)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="10,20,30")
    ap.add_argument("--bounds", default="4,8,16")
    ap.add_argument("--T", type=int, default=8)
    ap.add_argument("--trials", type=int, default=3)
    args = ap.parse_args()
    payload = [[int(v) for v in args.sizes.split(",")],
               [int(v) for v in args.bounds.split(",")], args.T, args.trials]

    fast = run(False, payload)
    slow = run(True, payload)
    print(f"{'kernel':<6} {'size':>6} {fast['backend']:>12} {slow['backend']:>12} {'speedup':>9}")
    for key in ("ibr", "ibsr"):
        for (size, tf), (_, ts) in zip(fast[key], slow[key]):
            ratio = ts / tf if tf > 0 else float("inf")
            print(f"{key:<6} {size:>6} {tf:>12.6f} {ts:>12.6f} {ratio:>8.1f}x")


if __name__ == "__main__":
    main()
