"""Head-to-head timing of the compiled theta kernels vs the NumPy fallback.

Both kernel modules are importable side by side (backend selection only
affects which one the library binds to), so one process can time the pairs
directly. Run from the repo root:

    python benchmarks/bench_theta.py

Workloads mirror the real inner loops: batched weighted theta sums feed the
sweeps and quadratures, the scalar entry point dominates per-point overlap
calls, the Gaussian-sum kernel carries the high-nome regime, and the lattice
kernel is the torus closed form.
"""
import math
import time

import numpy as np

from circlecs import _kernels_py
from circlecs._backend import BACKEND

try:
    from circlecs import _theta_kernels
except ImportError:
    _theta_kernels = None


def best_of(fn, repeats=5):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads():
    rng = np.random.default_rng(7)
    zr = rng.uniform(-6.0, 6.0, 20000)
    zi = rng.uniform(-1.5, 1.5, 20000)
    yield ("batch values  (20k pts, nmax 40)",
           lambda m: m.theta_weighted_sum_batch(zr, zi, 0.55, 40, 0))
    yield ("batch 2nd der (20k pts, nmax 40)",
           lambda m: m.theta_weighted_sum_batch(zr, zi, 0.55, 40, 2))

    def scalar_loop(m):
        for x in zr[:2000]:
            m.theta_weighted_sum(float(x), 0.3, 0.4, 30, 0)
    yield ("scalar calls  (2000 x nmax 30)", scalar_loop)

    def gauss_loop(m):
        for x in zr[:2000]:
            m.gauss_theta_log(float(x), 0.0, 0.05, -40, 40)
    yield ("gauss-sum     (2000 x 81 terms)", gauss_loop)

    basis = np.array([[1.0, 0.0], [0.5, math.sqrt(0.75)]])
    om_im = basis @ basis.T + 0.6 * np.eye(2)
    om_re = 0.3 * (basis + basis.T)
    wr = rng.uniform(-2.0, 2.0, (400, 2))
    wi = rng.uniform(-0.5, 0.5, (400, 2))
    yield ("lattice 2-d   (400 pts, nmax 8)",
           lambda m: m.lattice_theta_batch(om_re, om_im, wr, wi, 8))


def main():
    print(f"library backend at import: {BACKEND}")
    if _theta_kernels is None:
        print("compiled extension not built; nothing to compare "
              "(python -m pip install -e . rebuilds it)")
        return
    print(f"{'workload':<34} {'numpy':>10} {'cython':>10} {'speedup':>8}")
    for name, call in workloads():
        t_py = best_of(lambda: call(_kernels_py))
        t_cy = best_of(lambda: call(_theta_kernels))
        print(f"{name:<34} {t_py * 1e3:>8.2f}ms {t_cy * 1e3:>8.2f}ms "
              f"{t_py / t_cy:>7.1f}x")


if __name__ == "__main__":
    main()
