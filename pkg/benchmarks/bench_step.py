#!/usr/bin/env python3
"""Benchmark the compiled stepping kernel against the pure-numpy fallback.

Both backends advance the same capacity-scaled state through the identical
semi-implicit update (explicit reaction, implicit diffusion with reflecting
boundaries), so the comparison isolates kernel speed.

Usage:
    python3 benchmarks/bench_step.py [--n-points N] [--steps K] [--repeats R]
"""

import argparse
import time

import numpy as np

from gutpatterns.kernels import _step_numba, _step_numpy
from gutpatterns.params import table1_params
from gutpatterns.solver import Domain1D


def make_state(p, dom, rng):
    x = dom.x()
    beta = 0.3 + 1e-3 * rng.uniform(-1.0, 1.0, dom.n_points)
    beta += 0.01 * np.exp(-((x - dom.length / 2) / (dom.length / 20)) ** 2)
    gamma = np.full(dom.n_points, 0.03)
    return beta, gamma


def run_backend(step_fn, p, dom, dt, steps, rng):
    beta, gamma = make_state(p, dom, rng)
    mu_b = p.d_b * dt / dom.dx**2
    mu_c = p.d_c * dt / dom.dx**2
    s = p.s_b / p.b_i
    start = time.perf_counter()
    for _ in range(steps):
        beta, gamma = step_fn(beta, gamma, dt, mu_b, mu_c,
                              p.r_b, p.a, s, p.f_e, p.f_b, p.r_c)
    return time.perf_counter() - start, beta, gamma


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-points", type=int, default=3000)
    ap.add_argument("--steps", type=int, default=2000)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    p = table1_params()
    dom = Domain1D(length=0.03, n_points=args.n_points)
    dt = 1.0

    backends = [("numpy", _step_numpy)]
    if _step_numba is not None:
        # trigger JIT compilation outside the timed region
        run_backend(_step_numba, p, dom, dt, 1, np.random.default_rng(0))
        backends.append(("numba", _step_numba))
    else:
        print("numba backend unavailable (disabled or not installed); "
              "benchmarking numpy only")

    print(f"{args.n_points} grid points, {args.steps} steps, "
          f"best of {args.repeats} repeats")
    results = {}
    final = {}
    for name, fn in backends:
        best = float("inf")
        for _ in range(args.repeats):
            elapsed, beta, gamma = run_backend(fn, p, dom, dt, args.steps,
                                               np.random.default_rng(1234))
            best = min(best, elapsed)
        results[name] = best
        final[name] = (beta, gamma)
        per_step = best / args.steps * 1e6
        print(f"  {name:<6} {best:8.3f} s total   {per_step:9.1f} us/step")

    if len(results) == 2:
        print(f"  speedup: numba is {results['numpy'] / results['numba']:.1f}x "
              f"faster than numpy")
        db, dg = final["numba"], final["numpy"]
        drift = max(float(np.max(np.abs(db[0] - dg[0]))),
                    float(np.max(np.abs(db[1] - dg[1]))))
        print(f"  max field divergence after {args.steps} steps: {drift:.2e} "
              f"(capacity-scaled units)")


if __name__ == "__main__":
    main()
