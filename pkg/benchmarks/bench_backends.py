#!/usr/bin/env python3
"""Compare the compiled and pure-Python integer kernels.

The backend is fixed at import time through the MCGTWIST_BACKEND
environment variable, so each timing runs in a fresh interpreter.

Usage: python3 benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

SPECS = [
    (3, 1, 0, 0, "pm+"),
    (5, 0, 2, 0, "pmk"),
    (7, 1, 2, 0, "pmk"),
    (6, 2, 3, None, "m"),
    (9, 1, 3, 0, "pmk"),
]

WORKER = r"""
import json, sys, time
from mcgtwist import SurfaceSpec, compute_h1
from mcgtwist.intlin import BACKEND_NAME

g, s, n, k, flavor, repeat = json.loads(sys.argv[1])
spec = SurfaceSpec.make(g, s, n, k, flavor)
timings = []
for _ in range(repeat):
    t0 = time.perf_counter()
    compute_h1(spec)
    timings.append(time.perf_counter() - t0)
print(json.dumps({"backend": BACKEND_NAME, "seconds": min(timings)}))
"""


def measure(backend, spec, repeat):
    env = dict(os.environ, MCGTWIST_BACKEND=backend)
    payload = json.dumps(list(spec) + [repeat])
    out = subprocess.run(
        [sys.executable, "-c", WORKER, payload],
        env=env, capture_output=True, text=True, check=True,
    )
    record = json.loads(out.stdout)
    expected = "c" if backend == "c" else "python"
    if record["backend"] != expected:
        raise RuntimeError(
            "backend %r requested but %r loaded" % (backend, record["backend"])
        )
    return record["seconds"]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="timings per spec; the best is reported")
    args = parser.parse_args()

    header = "%-22s %12s %12s %9s" % ("spec", "compiled", "pure py", "speedup")
    print(header)
    print("-" * len(header))
    for spec in SPECS:
        g, s, n, k, flavor = spec
        label = "(%d,%d,%d,%s,%s)" % (g, s, n, "-" if k is None else k, flavor)
        fast = measure("c", spec, args.repeat)
        slow = measure("py", spec, args.repeat)
        print("%-22s %10.3f s %10.3f s %8.2fx" % (label, fast, slow, slow / fast))


if __name__ == "__main__":
    main()
