#!/usr/bin/env python3
"""Compare the compiled log-score kernel against the pure-numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import time

import numpy as np

from causalwatch import kernels


def run(fn, inputs, repeats):
    # warm-up (triggers JIT compilation for the compiled path)
    fn(*inputs[0])
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for args in inputs:
            fn(*args)
        best = min(best, time.perf_counter() - start)
    return best / len(inputs)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=20)
    parser.add_argument("--cases", type=int, default=2000)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    shapes = [(4, 3), (8, 4), (16, 8), (64, 16)]
    print(f"compiled backend available: {kernels.HAVE_NUMBA}")
    print(f"{'shape (K,C)':>12} {'numpy':>12} {'compiled':>12} {'speedup':>9}")
    for K, C in shapes:
        inputs = []
        for _ in range(args.cases):
            joint = rng.integers(0, 50, size=(K, C)).astype(np.float64)
            cc = joint.max(axis=0) + rng.integers(1, 20, size=C).astype(np.float64)
            inputs.append((joint, cc, np.full(K, float(C)), float(cc.sum()), C, True))
        t_py = run(kernels._log_scores_kernel, inputs, args.repeats)
        if kernels.HAVE_NUMBA:
            t_jit = run(kernels._log_scores_numba, inputs, args.repeats)
            print(f"{K:>6},{C:<5} {t_py * 1e6:>10.2f}us {t_jit * 1e6:>10.2f}us "
                  f"{t_py / t_jit:>8.1f}x")
        else:
            print(f"{K:>6},{C:<5} {t_py * 1e6:>10.2f}us {'n/a':>12} {'n/a':>9}")


if __name__ == "__main__":
    main()
