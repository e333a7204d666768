"""Compare the compiled and numpy sweep kernels on full N^3 axiom scans.

Usage: python benchmarks/bench_kernels.py [--p 3 --m 2 --n 2 --d 1] [--repeat 3]

The same tables are fed to both backends and the results are checked for
agreement before timings are reported.
"""

import argparse
import time

import numpy as np

from nearrings import _sweeps_py
from nearrings.maps import canonical_maps, mul_table
from nearrings.pgroup import add_table, make_params

try:
    from nearrings import _fastsweeps
except ImportError:
    _fastsweeps = None


def timed(fn, *args, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return result, best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--d", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    g = make_params(args.p, args.m, args.n, args.d)
    A = np.ascontiguousarray(add_table(g), dtype=np.int32)
    M = np.ascontiguousarray(mul_table(g, canonical_maps(g)), dtype=np.int32)
    print(f"group order {g.order}  ({g.order**3:,} triples per sweep)")

    rows = []
    for name, kind, fn_args in (
        ("associativity", "assoc", (M,)),
        ("left distributivity", "ldist", (M, A)),
    ):
        py_fn = getattr(_sweeps_py, f"{kind}_counterexample")
        py_res, py_t = timed(py_fn, *fn_args, repeat=args.repeat)
        if _fastsweeps is not None:
            cy_fn = getattr(_fastsweeps, f"{kind}_counterexample")
            cy_res, cy_t = timed(cy_fn, *fn_args, repeat=args.repeat)
            assert cy_res == py_res, f"{name}: backends disagree"
            rows.append((name, py_t, cy_t))
        else:
            rows.append((name, py_t, None))

    print(f"{'sweep':<22} {'numpy':>10} {'compiled':>10} {'speedup':>8}")
    for name, py_t, cy_t in rows:
        if cy_t is None:
            print(f"{name:<22} {py_t * 1e3:>8.2f}ms {'n/a':>10} {'n/a':>8}")
        else:
            print(
                f"{name:<22} {py_t * 1e3:>8.2f}ms {cy_t * 1e3:>8.2f}ms "
                f"{py_t / cy_t:>7.1f}x"
            )
    if _fastsweeps is None:
        print("compiled extension not available; numpy timings only")


if __name__ == "__main__":
    main()
