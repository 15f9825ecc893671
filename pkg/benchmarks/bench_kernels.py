"""Time the numba and numpy paths of the brute-force kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json]

Each kernel is run once per backend to warm up (numba compiles on first
call; the on-disk cache makes later processes fast), then timed.
"""
from __future__ import annotations

import argparse
import json
import os
import time

import numpy as np

from latprob import _kernels


def _cases():
    rng = np.random.default_rng(0)
    rows = rng.integers(-10, 11, size=(4, 4))
    yield "box_min_norm 4x4, box 9^4", _kernels.box_min_norm, (rows, np.array([4, 4, 4, 4]), _kernels.P_L2)
    a = rng.integers(0, 101, size=(30, 3))
    b = rng.integers(0, 101, size=30)
    yield "lwe_scan n=3 q=101 m=30", _kernels.lwe_scan, (a, b, 101)
    a = rng.integers(0, 17, size=(4, 24))
    xs = rng.integers(0, 2, size=(200_000, 24))
    yield "hash_rows 200k x 24", _kernels.hash_rows, (a, xs, 17)


def _time(fn, args, repeat):
    fn(*args)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    old = os.environ.get("LATPROB_DISABLE_NUMBA")
    rows = []
    try:
        for name, fn, fargs in _cases():
            os.environ["LATPROB_DISABLE_NUMBA"] = "0"
            t_nb = _time(fn, fargs, args.repeat)
            os.environ["LATPROB_DISABLE_NUMBA"] = "1"
            t_np = _time(fn, fargs, args.repeat)
            rows.append({"kernel": name, "numba_s": t_nb, "numpy_s": t_np, "speedup": t_np / t_nb})
    finally:
        if old is None:
            os.environ.pop("LATPROB_DISABLE_NUMBA", None)
        else:
            os.environ["LATPROB_DISABLE_NUMBA"] = old
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'kernel':32s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
        for r in rows:
            print(f"{r['kernel']:32s} {r['numba_s'] * 1e3:8.2f}ms {r['numpy_s'] * 1e3:8.2f}ms {r['speedup']:7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
