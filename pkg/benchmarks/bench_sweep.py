"""Benchmark the shape-operator sweep: compiled Jacobi core vs NumPy fallback.

The sweep dominates every quadrature-heavy verification (fiber determinant
integrals, index slicing, constant estimation), so this is the comparison
that justifies shipping the compiled extension.

    python3 benchmarks/bench_sweep.py [--repeats 5]
"""

import argparse
import time

import numpy as np

from curvature_gauge import kernels
from curvature_gauge.tensor_core import symmetrized

CASES = [
    # (n, p, directions, calls) roughly matching real workloads:
    (4, 2, 256, 200),     # one fiber integral per manifold node
    (4, 2, 65536, 4),     # a flattened normal-bundle sweep
    (6, 3, 1024, 50),     # higher codimension fiber
    (8, 2, 4096, 20),     # larger tangent dimension
]


def time_backend(fn, comps, dirs, calls, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for _ in range(calls):
            fn(comps, dirs, 1e-10, True)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    print(f"selected backend at import: {kernels.BACKEND}")
    header = f"{'case':>22} {'numpy (s)':>12} {'compiled (s)':>13} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for n, p, nf, calls in CASES:
        comps = symmetrized(rng.standard_normal((p, n, n)))
        dirs = rng.standard_normal((nf, p))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        t_np = time_backend(kernels.sweep_numpy, comps, dirs, calls, args.repeats)
        label = f"n={n} p={p} F={nf}x{calls}"
        if kernels.BACKEND == "compiled":
            t_cy = time_backend(kernels.sweep_compiled, comps, dirs, calls, args.repeats)
            a_n, i_n = kernels.sweep_numpy(comps, dirs, 1e-10, True)
            a_c, i_c = kernels.sweep_compiled(comps, dirs, 1e-10, True)
            assert np.array_equal(i_n, i_c)
            assert np.max(np.abs(a_n - a_c) / np.maximum(1.0, np.abs(a_n))) < 1e-10
            print(f"{label:>22} {t_np:12.4f} {t_cy:13.4f} {t_np / t_cy:8.1f}x")
        else:
            print(f"{label:>22} {t_np:12.4f} {'n/a':>13} {'n/a':>9}")


if __name__ == "__main__":
    main()
