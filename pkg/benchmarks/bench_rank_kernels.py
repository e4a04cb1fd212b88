"""Rank-at-every-point throughput: numba kernels vs the pure-numpy fallback.

    python benchmarks/bench_rank_kernels.py [--repeat 5] [--json out.json]

Each case evaluates a random matrix of linear forms at every point of
P^k(F_q) and computes its rank mod q, as strata counting does. The first
numba call (compilation) is excluded from the timings.
"""

import argparse
import json
import sys
import time

import numpy as np

from monadlab import kernels
from monadlab._backend import HAVE_NUMBA
from monadlab.points import projective_points

CASES = [
    # (rows, cols, k, q)
    (4, 3, 3, 5),
    (4, 3, 3, 11),
    (8, 6, 3, 11),
    (10, 8, 4, 7),
    (12, 10, 3, 13),
]


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", type=str, default=None, help="also write results here")
    args = ap.parse_args(argv)

    backends = ["numpy"] + (["numba"] if HAVE_NUMBA else [])
    if not HAVE_NUMBA:
        print("numba not importable; timing the numpy fallback only", file=sys.stderr)
    rng = np.random.default_rng(0)
    rows = []
    print(f"{'shape':>8} {'k':>2} {'q':>3} {'points':>7} " + " ".join(f"{b + ' (s)':>12}" for b in backends)
          + (f" {'speedup':>8}" if len(backends) == 2 else ""))
    for r, c, k, q in CASES:
        coeffs = rng.integers(0, q, size=(r, c, k + 1))
        pts = projective_points(k, q)
        if "numba" in backends:
            kernels.ranks_at_points(coeffs, pts[:4], q, backend="numba")
        times, results = {}, {}
        for b in backends:
            times[b], results[b] = _time(lambda b=b: kernels.ranks_at_points(coeffs, pts, q, backend=b), args.repeat)
        if len(backends) == 2:
            assert np.array_equal(results["numpy"], results["numba"]), "backends disagree"
        row = {"rows": r, "cols": c, "k": k, "q": q, "points": int(pts.shape[0]), "seconds": times}
        rows.append(row)
        line = f"{f'{r}x{c}':>8} {k:>2} {q:>3} {pts.shape[0]:>7} " + " ".join(f"{times[b]:>12.4f}" for b in backends)
        if len(backends) == 2:
            line += f" {times['numpy'] / times['numba']:>7.1f}x"
        print(line)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
