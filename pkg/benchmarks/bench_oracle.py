"""Benchmark the box-sweep kernel across backends and check they agree."""

import argparse
import os
import time

from lonely_runner._kernels import HAVE_NUMBA, sweep_raw

PLANES = {
    "strip-quarter": ((0, 1, 2, 3), (1, 0, 0, 0)),
    "sector-tenth": ((0, 1, 3), (1, 0, 1)),
    "sector-third": ((1, 0, 1, 2, 3, 3), (0, 1, 1, 1, 1, 2)),
    "finite-three-tenths": ((1, 2, 3, 2, 0, 0, 0), (0, 0, 0, 2, 1, 2, 3)),
}


def run_backend(mode, u, v, bound, repeats):
    os.environ["LONELY_RUNNER_KERNEL"] = mode
    sweep_raw(u, v, 5)  # warm up; the numba path compiles here
    best = None
    rows = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        rows = sweep_raw(u, v, bound)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--plane", choices=sorted(PLANES), default="sector-third")
    ap.add_argument("--bound", type=int, default=150)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()
    u, v = PLANES[args.plane]
    modes = ["python", "numpy"] + (["numba"] if HAVE_NUMBA else [])
    if not HAVE_NUMBA:
        print("numba unavailable; benchmarking python and numpy only")
    saved = os.environ.get("LONELY_RUNNER_KERNEL")
    times = {}
    reference = None
    try:
        for mode in modes:
            best, rows = run_backend(mode, u, v, args.bound, args.repeats)
            if reference is None:
                reference = rows
            if rows != reference:
                print(f"{mode:>7}: rows disagree with the {modes[0]} backend")
                return 1
            times[mode] = best
            rate = len(rows) / best
            print(f"{mode:>7}: {best:8.3f} s  {len(rows)} rows  {rate:12.0f} rows/s")
    finally:
        if saved is None:
            os.environ.pop("LONELY_RUNNER_KERNEL", None)
        else:
            os.environ["LONELY_RUNNER_KERNEL"] = saved
    base = times[modes[0]]
    for mode in modes[1:]:
        print(f"{mode} speedup over {modes[0]}: {base / times[mode]:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
