"""Compare the compiled kernels with the NumPy fallback.

    python3 benchmarks/bench_kernels.py [--repeat R]

Prints one row per kernel: best-of-R wall time for each backend, the
speedup, and the largest difference between the two results.
"""

import argparse
import time

import numpy as np

from thfactor import kernels
from thfactor.quadrature import panel_rule


def _best(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases(rng):
    # a realistic panel rule: two jumps, coefficients -512..511
    base, off, w = panel_rule([0.0, 2.0], h=40.0 / 512, singular=True)
    theta = base + off
    weighted = w * np.exp(0.3j * theta)
    yield "nudft", lambda b: kernels.nudft(theta, weighted, -512, 511, backend=b), theta.size

    vals = np.exp(1j * (3 * np.linspace(0, 2 * np.pi, 1 << 20, endpoint=False)
                        + 0.2 * rng.normal(size=1 << 20)))
    yield "phase_walk", lambda b: np.array(kernels.phase_walk(vals, backend=b)), vals.size

    th = rng.uniform(0, 2 * np.pi, 200_000)
    locs = [0.0, 1.0, np.pi, 4.0, 5.5]
    betas = rng.normal(size=5) + 0.1j * rng.normal(size=5)
    yield "jump_product", lambda b: kernels.jump_product(th, locs, betas, backend=b), th.size


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    rng = np.random.default_rng(0)
    if kernels.BACKEND != "cython":
        print("compiled kernels not built; only the NumPy backend is timed")
    print(f"{'kernel':14s} {'size':>9s} {'numpy [s]':>10s} {'cython [s]':>11s} {'speedup':>8s} {'max diff':>9s}")
    for name, fn, size in cases(rng):
        t_np, r_np = _best(lambda: fn("numpy"), args.repeat)
        if kernels.BACKEND == "cython":
            t_cy, r_cy = _best(lambda: fn("cython"), args.repeat)
            diff = float(np.max(np.abs(np.asarray(r_np) - np.asarray(r_cy))))
            print(f"{name:14s} {size:9d} {t_np:10.4f} {t_cy:11.4f} {t_np / t_cy:8.1f} {diff:9.1e}")
        else:
            print(f"{name:14s} {size:9d} {t_np:10.4f} {'-':>11s} {'-':>8s} {'-':>9s}")


if __name__ == "__main__":
    main()
