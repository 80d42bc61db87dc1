"""Compare the compiled and pure-Python canonical-form kernels.

Usage: python3 benchmarks/bench_canon.py [--patterns N] [--m 6] [--n 6] [--edges 12]

Times single canonical-form calls on random patterns, checks that both
kernels agree, and times a full orbit enumeration with each kernel.
"""

import argparse
import random
import sys
import time

from orthoslice.patterns import CENSUS_SYMMETRY, KERNEL, _canon_rows_fast, _canon_rows_py, iter_orbit_masks


def time_calls(kernel, cases):
    t0 = time.perf_counter()
    out = [kernel(rows, m, n) for rows, m, n in cases]
    return time.perf_counter() - t0, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--patterns", type=int, default=20000)
    ap.add_argument("--m", type=int, default=6)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--edges", type=int, default=12)
    ap.add_argument("--max-degree", type=int, default=5)
    ap.add_argument("--enum-python", action="store_true",
                    help="also run the full enumeration with the Python kernel (slow)")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if _canon_rows_fast is None:
        print("compiled kernel not built; reinstall with Cython available", file=sys.stderr)
        return 1
    print(f"active kernel: {KERNEL}")
    rng = random.Random(args.seed)
    cases = [([rng.randrange(1 << args.n) for _ in range(args.m)], args.m, args.n) for _ in range(args.patterns)]
    tc, oc = time_calls(_canon_rows_fast, cases)
    tp, op = time_calls(_canon_rows_py, cases)
    if oc != op:
        print("kernels disagree", file=sys.stderr)
        return 1
    print(f"{args.patterns} random {args.m}x{args.n} patterns: "
          f"cython {tc / args.patterns * 1e6:.2f} us/call, python {tp / args.patterns * 1e6:.2f} us/call, "
          f"speed-up {tp / tc:.1f}x (outputs identical)")

    t0 = time.perf_counter()
    k = len(iter_orbit_masks(args.m, args.n, args.edges, args.max_degree, CENSUS_SYMMETRY))
    tce = time.perf_counter() - t0
    print(f"enumeration {args.m}x{args.n}, {args.edges} edges, max degree {args.max_degree}: "
          f"{k} orbits, cython {tce:.2f} s")
    if args.enum_python:
        t0 = time.perf_counter()
        kp = len(iter_orbit_masks(args.m, args.n, args.edges, args.max_degree, CENSUS_SYMMETRY, use_python=True))
        tpe = time.perf_counter() - t0
        print(f"  python {tpe:.2f} s ({kp} orbits), speed-up {tpe / tce:.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
