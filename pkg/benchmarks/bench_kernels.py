"""Compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints the best wall time per kernel for each backend and the speedup.  The
last row times a full matrix range computation with each backend selected
through NRANGE_PURE_PYTHON in a subprocess.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from nrange import _pykernels as py

try:
    from nrange import _ckernels as cy
except ImportError:
    cy = None


def cases(rng):
    herm = {}
    for n in (5, 16, 32):
        z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        herm[n] = (z + z.conj().T) / 2
    t5 = (rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))) / np.sqrt(10)
    thetas = np.linspace(0, 2 * np.pi, 720, endpoint=False)
    atoms = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    weights = rng.dirichlet(np.ones(6))
    disk = np.exp(-1j * thetas) / np.cos(np.pi / 720)
    pts = rng.standard_normal(100_000) + 1j * rng.standard_normal(100_000)
    poly = np.exp(1j * np.linspace(0, 2 * np.pi, 720, endpoint=False))
    return [
        ("jacobi n=5", lambda k: k.jacobi_eigvalsh(herm[5])),
        ("jacobi n=16", lambda k: k.jacobi_eigvalsh(herm[16])),
        ("jacobi n=32", lambda k: k.jacobi_eigvalsh(herm[32])),
        ("rotated eigvals 5x5, 720 angles", lambda k: k.rotated_eigvalsh(t5, thetas)),
        ("knapsack 6 atoms, 720 angles", lambda k: k.knapsack_support(atoms, weights, thetas, 0.4)),
        ("half-plane violation 720x720", lambda k: k.halfplane_violation(disk, thetas, np.ones(720))),
        ("polygon distance 1e5 pts, 720-gon", lambda k: k.polygon_distance(pts, poly)),
    ]


def best(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def end_to_end(pure):
    code = (
        "import time, numpy as np\n"
        "from nrange import SpectralModel, WeightSpec, compute_range\n"
        "from nrange.matrixops import random_matrix\n"
        "m = SpectralModel.from_matrix(random_matrix(5, np.random.default_rng(0)))\n"
        "compute_range(m, WeightSpec.from_alpha(0.4))\n"
        "s = time.perf_counter()\n"
        "for _ in range(5): compute_range(m, WeightSpec.from_alpha(0.4))\n"
        "print((time.perf_counter() - s) / 5)\n"
    )
    env = dict(os.environ, NRANGE_PURE_PYTHON="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if cy is None:
        print("compiled extension not built; only the numpy fallback is available")
    print(f"{'kernel':36s} {'python':>12s} {'cython':>12s} {'speedup':>8s}")
    for name, fn in cases(np.random.default_rng(0)):
        tp = best(lambda: fn(py), args.repeat)
        if cy is None:
            print(f"{name:36s} {tp * 1e3:10.3f}ms {'-':>12s} {'-':>8s}")
            continue
        tc = best(lambda: fn(cy), args.repeat)
        print(f"{name:36s} {tp * 1e3:10.3f}ms {tc * 1e3:10.3f}ms {tp / tc:7.1f}x")
    tp = end_to_end(True)
    tc = end_to_end(False) if cy is not None else float("nan")
    print(f"{'compute_range 5x5, 720 directions':36s} {tp * 1e3:10.3f}ms {tc * 1e3:10.3f}ms {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
