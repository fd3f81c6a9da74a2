"""Timing comparison of the numba kernels against their numpy fallbacks.

Usage: python benchmarks/bench_accel.py [--repeats N]

The same comparison can be driven end to end through the environment
flag (``MATFAC_DISABLE_NUMBA=1 matfac ...``); this script toggles the
kernel path in-process so both variants run on identical inputs.
"""

import argparse
import time

import numpy as np

from matfac import dgp, linalg


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_eig(dim, repeats):
    rng = np.random.default_rng(dim)
    b = rng.standard_normal((dim, dim))
    a = b.T @ b
    out = {}
    for label, flag in (("numba", True), ("numpy", False)):
        if flag and not linalg.HAS_NUMBA:
            out[label] = float("nan")
            continue
        linalg.USE_NUMBA = flag
        linalg.eig_sym(a)  # warm-up / JIT compile
        out[label] = best_of(lambda: linalg.eig_sym(a), repeats)
    return out


def bench_ar(n, rc, repeats):
    rng = np.random.default_rng(n)
    coeffs = rng.uniform(-0.9, 0.9, (rc, rc))
    start = rng.standard_normal((rc, rc))
    shocks = rng.standard_normal((n, rc, rc))
    out = {}
    for label, flag in (("numba", True), ("numpy", False)):
        if flag and not linalg.HAS_NUMBA:
            out[label] = float("nan")
            continue
        dgp.USE_NUMBA = flag
        dgp._ar1_path(coeffs, start, shocks)  # warm-up / JIT compile
        out[label] = best_of(lambda: dgp._ar1_path(coeffs, start, shocks), repeats)
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    print(f"{'kernel':<28}{'numba':>12}{'numpy':>12}{'speedup':>10}")
    for dim in (20, 40, 80):
        r = bench_eig(dim, args.repeats)
        print(
            f"{f'jacobi eig_sym {dim}x{dim}':<28}"
            f"{r['numba'] * 1e3:>10.2f}ms{r['numpy'] * 1e3:>10.2f}ms"
            f"{r['numpy'] / r['numba']:>9.1f}x"
        )
    for n in (10_000, 200_000):
        r = bench_ar(n, 3, args.repeats)
        print(
            f"{f'ar1 path n={n} (3x3)':<28}"
            f"{r['numba'] * 1e3:>10.2f}ms{r['numpy'] * 1e3:>10.2f}ms"
            f"{r['numpy'] / r['numba']:>9.1f}x"
        )


if __name__ == "__main__":
    main()
