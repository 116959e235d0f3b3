"""Benchmark the two causal-convolution backends against each other.

Runs the compensated O(N^2) kernel through the numba JIT and through the
pure-numpy diagonal sweep at several problem sizes, prints best-of-repeat
wall times and the speedup.  Invoke directly:

    python benchmarks/bench_kernels.py [--sizes 256,1024,4096] [--repeat 5]
"""

from __future__ import annotations

import argparse
import os
import time

import numpy as np

from trcq_kit.kernels import HAVE_NUMBA, causal_convolve


def _best_time(weights: np.ndarray, signal: np.ndarray, backend: str, repeat: int) -> float:
    os.environ["TRCQ_BACKEND"] = backend
    causal_convolve(weights, signal)  # warm (JIT compile / cache touch)
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        causal_convolve(weights, signal)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="256,1024,4096,8192")
    parser.add_argument("--dim", type=int, default=2, help="matrix block size")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    rng = np.random.default_rng(0)
    print(f"numba available: {HAVE_NUMBA}")
    print(f"{'N':>8} {'dim':>4} {'numpy [ms]':>12} {'numba [ms]':>12} {'speedup':>8}")
    saved = os.environ.get("TRCQ_BACKEND")
    try:
        for n in sizes:
            shape_w = (n, args.dim, args.dim)
            shape_g = (n, args.dim)
            weights = rng.standard_normal(shape_w) + 1j * rng.standard_normal(shape_w)
            signal = rng.standard_normal(shape_g) + 1j * rng.standard_normal(shape_g)
            t_np = _best_time(weights, signal, "numpy", args.repeat)
            if HAVE_NUMBA:
                t_nb = _best_time(weights, signal, "numba", args.repeat)
                print(
                    f"{n:>8} {args.dim:>4} {1e3 * t_np:>12.3f} {1e3 * t_nb:>12.3f} "
                    f"{t_np / t_nb:>8.2f}"
                )
            else:
                print(f"{n:>8} {args.dim:>4} {1e3 * t_np:>12.3f} {'n/a':>12} {'n/a':>8}")
    finally:
        if saved is None:
            os.environ.pop("TRCQ_BACKEND", None)
        else:
            os.environ["TRCQ_BACKEND"] = saved


if __name__ == "__main__":
    main()
