"""Benchmark the numba kernels against the pure-numpy fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Times the three hot paths (translation-shift modulus scan, integral-variation
DP, Lambda family enumeration) on synthetic step functions and prints a
speedup table. The first numba call includes JIT compilation; a warmup pass
keeps it out of the timings.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from bvkit import _kernels
from bvkit.ibv import CutConfig, ivar
from bvkit.lqmod import omega_q
from bvkit.stepfun import UNIT, make_step_function
from bvkit.waterman import WatermanSequence, lambda_variation


def synthetic_step(rng, m):
    inner = np.sort(rng.uniform(0.02, 0.98, m - 1))
    bk = np.concatenate(([0.0], inner, [1.0]))
    return make_step_function(
        UNIT, bk.tolist(), rng.uniform(-2, 2, m).tolist(), rng.uniform(-2, 2, m + 1).tolist()
    )


def bench(label, fn, repeat):
    fn()  # warmup (numba compilation, table caches)
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn()
    return label, (time.perf_counter() - t0) / repeat


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    xs_small = [synthetic_step(rng, 6) for _ in range(50)]
    xs_mid = [synthetic_step(rng, 6) for _ in range(10)]
    xs_big = [synthetic_step(rng, 12) for _ in range(10)]
    seq = WatermanSequence("harmonic")
    cfg = CutConfig(k=64, max_cuts=256)

    jobs = [
        ("omega_q m=12 x10", lambda: [omega_q(x, 2.0) for x in xs_big]),
        ("ivar sweep m=6 x10", lambda: [ivar(x, 1.0, 2.0, cuts=cfg).value for x in xs_mid]),
        ("lambda_variation m=6 x50", lambda: [lambda_variation(x, seq).value for x in xs_small]),
    ]

    results = {}
    for backend in ("numba", "numpy"):
        _kernels.use_backend(backend)
        print(f"backend: {_kernels.current_backend()}")
        for label, fn in jobs:
            name, dt = bench(label, fn, args.repeat)
            results[(backend, name)] = dt
            print(f"  {name:28s} {dt*1e3:9.2f} ms")

    print("\nspeedup (numpy time / numba time):")
    for label, _ in jobs:
        ratio = results[("numpy", label)] / results[("numba", label)]
        print(f"  {label:28s} {ratio:6.1f}x")


if __name__ == "__main__":
    main()
