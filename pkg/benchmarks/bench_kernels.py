"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints one JSON line per (kernel, backend) with the best wall time.
"""

import argparse
import json
import math
import time

import numpy as np

from eulerlab import _pykernels
from eulerlab.lifts import Compose, Mobius, PiecewiseLinear

try:
    from eulerlab import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def _random_lift(rng):
    xs = np.sort(rng.uniform(0, 1, 6))
    ys = np.sort(rng.uniform(0, 1, 6)) + rng.uniform(0, 1)
    pl = PiecewiseLinear.from_graph(xs, ys)
    m = rng.normal(size=(2, 2))
    if np.linalg.det(m) < 0:
        m[0] *= -1
    return Compose(pl, Mobius(m / math.sqrt(np.linalg.det(m))))


def _best(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def workloads(rng):
    lift = _random_lift(rng)
    kinds, offsets, data = lift._packed
    x = rng.uniform(0, 1, 100_000)
    xs = np.arange(64) / 64.0
    V = rng.standard_normal((20_000, 4, 3))

    def apply(mod):
        return lambda: mod.apply_program(kinds, offsets, data, x)

    def orbit(mod):
        def run():
            r = xs.copy()
            n = np.zeros_like(xs)
            # a negative tolerance never stops early
            mod.orbit_enclosure(kinds, offsets, data, xs, r, n, 0, -1.0, 20_000, -math.inf, math.inf)

        return run

    def tvals(mod):
        return lambda: mod.t_values(V, 1e-9)

    return {"apply_program 1e5 points": apply, "orbit 64 points x 2e4 steps": orbit, "t_values 2e4 tuples d=3": tvals}


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    backends = {"python": _pykernels}
    if _ckernels is not None:
        backends["cython"] = _ckernels
    rng = np.random.default_rng(args.seed)
    for name, make in workloads(rng).items():
        times = {b: _best(make(mod), args.repeat) for b, mod in backends.items()}
        row = {"kernel": name, **{f"{b}_s": round(t, 6) for b, t in times.items()}}
        if "cython" in times:
            row["speedup"] = round(times["python"] / times["cython"], 2)
        print(json.dumps(row))


if __name__ == "__main__":
    main()
