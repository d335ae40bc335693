#!/usr/bin/env python3
"""Benchmark the compiled kernel backend against the pure-Python fallback.

Run from the repository root:

    python3 benchmarks/bench_backends.py

Times single energy evaluations and full multi-start point solves on both
backends (the fallback is selected by re-executing this script with
AQRM_PURE_PYTHON=1).
"""

import os
import subprocess
import sys
import time
import timeit


def measure():
    import aqrm
    from aqrm import _kernels
    from aqrm.params import ModelParams

    n = 200000
    t = timeit.timeit(
        lambda: _kernels.energy(1.0, 1.0, 1.0, 0.5, 0.9, 1.8, 0.95, 0.0),
        number=n,
    )
    eval_us = t / n * 1e6

    models = [ModelParams(1.0, 1.0, 0.1 * k, 0.5) for k in range(21)]
    t0 = time.perf_counter()
    for m in models:
        aqrm.minimize_energy(m)
    solve_ms = (time.perf_counter() - t0) / len(models) * 1e3

    print(f"{aqrm.BACKEND:<8} energy eval: {eval_us:8.3f} us   point solve: {solve_ms:8.2f} ms")


if __name__ == "__main__":
    if os.environ.get("AQRM_BENCH_CHILD"):
        measure()
    else:
        print("backend   per-call timings (lower is better)", flush=True)
        for pure in ("0", "1"):
            env = dict(os.environ, AQRM_BENCH_CHILD="1", AQRM_PURE_PYTHON=pure)
            subprocess.run([sys.executable, __file__], env=env, check=True)
