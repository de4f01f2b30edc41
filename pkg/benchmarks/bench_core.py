"""Benchmark the compiled obstruction-height kernel against the pure-Python
fallback.

Usage:
    python3 benchmarks/bench_core.py [--sizes 200,500,1000,2000,5000]

The pure backend is quadratic-with-large-constant Python, so the largest
sizes are only run on the compiled kernel by default; pass --full to force
the pure kernel everywhere.
"""

import argparse
import time

import numpy as np

from pvgraph import HAVE_COMPILED_CORE, normalize, TimeSeries
from pvgraph import _purecore

if HAVE_COMPILED_CORE:
    from pvgraph import _hullcore


def timed(fn, x, t, repeats):
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn(x, t)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="200,500,1000,2000,5000")
    parser.add_argument("--pure-cap", type=int, default=2000,
                        help="largest N run on the pure backend")
    parser.add_argument("--full", action="store_true",
                        help="run the pure backend at every size")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.default_rng(0)

    print(f"compiled core available: {HAVE_COMPILED_CORE}")
    print(f"{'N':>6} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}")
    for n in sizes:
        series = normalize(TimeSeries(values=rng.random(n), dt=0.001))
        x = np.ascontiguousarray(series.values, dtype=np.float64)
        t = np.arange(n, dtype=np.float64) * series.dt

        t_pure = None
        if args.full or n <= args.pure_cap:
            t_pure = timed(_purecore.raw_height_matrix, x, t, args.repeats)
            ref = _purecore.raw_height_matrix(x, t)
        t_comp = None
        if HAVE_COMPILED_CORE:
            t_comp = timed(_hullcore.raw_height_matrix, x, t, args.repeats)
            if t_pure is not None:
                out = np.asarray(_hullcore.raw_height_matrix(x, t))
                assert np.array_equal(out, ref), "backend mismatch"

        pure_s = f"{t_pure:10.3f}" if t_pure is not None else f"{'-':>10}"
        comp_s = f"{t_comp:13.4f}" if t_comp is not None else f"{'-':>13}"
        speed = (f"{t_pure / t_comp:7.1f}x"
                 if t_pure is not None and t_comp else f"{'-':>8}")
        print(f"{n:>6} {pure_s} {comp_s} {speed}")


if __name__ == "__main__":
    main()
