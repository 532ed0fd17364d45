"""Compare the numba and numpy measure kernels.

Both implementations are imported side by side, checked for agreement, and
timed on the same inputs.  Compilation happens in a warm-up call and is
reported separately.

    python3 benchmarks/bench_kernels.py [--nodes 64] [--points 1000] [--repeat 20]
    python3 benchmarks/bench_kernels.py --end-to-end   # also time a full solve per backend
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from opmeans._kernels import _numba, _numpy
from opmeans.kubo_ando import GeneratorMeasure

SOLVE_SNIPPET = """
import time
from opmeans import BACKEND, GeneratorMeasure, WeightedEnsemble, hellinger_barycenter, SigmaPotential, MeanDescriptor
from opmeans.hermitian import random_spd
import numpy as np
E = WeightedEnsemble.uniform([random_spd(6, 50, seed=s) for s in range(5)])
mu = GeneratorMeasure.power(0.4)
P = SigmaPotential(MeanDescriptor.from_measure(GeneratorMeasure.uniform()))
hellinger_barycenter(mu, E)
P.g(np.array([0.5, 2.0]))
t = time.perf_counter()
for _ in range(3):
    hellinger_barycenter(mu, E)
t1 = time.perf_counter()
P.g(np.linspace(0.05, 8, 200))
t2 = time.perf_counter()
print(f"{BACKEND:6s} hellinger solve {1e3 * (t1 - t) / 3:9.2f} ms   g on 200 points {1e3 * (t2 - t1):9.2f} ms")
"""


def best_of(func, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        func()
        times.append(time.perf_counter() - t)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", type=int, default=64)
    ap.add_argument("--points", type=int, default=1000)
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args(argv)

    mu = GeneratorMeasure.power(0.37, args.nodes)
    lam, w = mu.support
    x = np.geomspace(0.01, 100, args.points)
    t = mu.f(x)
    s = np.geomspace(0.05, 20, 32)
    xg = np.linspace(0.05, 8, max(args.points // 20, 2))

    cases = {
        "fmu": lambda m: m.fmu(lam, w, x),
        "fmu_prime": lambda m: m.fmu_prime(lam, w, x),
        "fmu_loewner(32)": lambda m: m.fmu_loewner(lam, w, s),
        "fmu_inverse": lambda m: m.fmu_inverse(lam, w, t, 1e-12),
        f"g_potential({xg.size})": lambda m: m.g_potential(lam, w, xg, 1e-11),
    }

    t0 = time.perf_counter()
    for fn in cases.values():
        fn(_numba)
    print(f"numba warm-up (compile or cache load): {time.perf_counter() - t0:.2f} s")
    print(f"{args.nodes} nodes, {args.points} points, best of {args.repeat}\n")
    print(f"{'kernel':22s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s} {'max diff':>10s}")
    for name, fn in cases.items():
        diff = np.max(np.abs(np.asarray(fn(_numba)) - np.asarray(fn(_numpy))))
        rep = max(1, args.repeat // 5) if name.startswith("g_") else args.repeat
        tn = best_of(lambda: fn(_numpy), rep)
        tb = best_of(lambda: fn(_numba), rep)
        print(f"{name:22s} {1e3 * tn:10.3f} {1e3 * tb:10.3f} {tn / tb:8.1f} {diff:10.2e}")

    if args.end_to_end:
        print(flush=True)
        for backend in ("numpy", "numba"):
            env = dict(os.environ, OPMEANS_BACKEND=backend)
            subprocess.run([sys.executable, "-c", SOLVE_SNIPPET], env=env, check=True)


if __name__ == "__main__":
    main()
