#!/usr/bin/env python3
"""Benchmark the walk kernels: compiled (numba) vs pure-Python backend.

Both backends run the identical kernel source on identical PRNG streams,
so the step counts must match exactly; only the wall clock differs.

    python benchmarks/bench_kernels.py [--trials 100]
"""

import argparse
import time

import numpy as np

from usolcp.kernels import build_kernels
from usolcp.rng import derive_seed, xorshift_state

SEED = 7


def build_backends():
    backends = {"python": build_kernels(lambda f: f)}
    try:
        from numba import njit

        backends["numba"] = build_kernels(njit)
    except ImportError:
        print("numba not importable; benchmarking the python backend only")
    return backends


def bench_random_edge(k, n, trials):
    total = 0
    t0 = time.perf_counter()
    for t in range(trials):
        st = np.array(xorshift_state(derive_seed(SEED, n, t)), dtype=np.int64)
        _, steps, _ = k.random_edge_walk(0, n, st, 10 ** 8)
        total += steps
    return time.perf_counter() - t0, total


def bench_murty_pi(k, n, runs):
    pi = np.arange(n, dtype=np.int64)[::-1].copy()
    total = 0
    t0 = time.perf_counter()
    for start in range(runs):
        _, steps, _ = k.murty_pi_walk(start % (1 << n), n, pi, 10 ** 6)
        total += steps
    return time.perf_counter() - t0, total


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=100, help="random-edge trials per n")
    ap.add_argument("--runs", type=int, default=2000, help="murty-pi runs per n")
    args = ap.parse_args()

    backends = build_backends()
    if "numba" in backends:
        # one warm-up call per kernel so compilation stays out of the timings
        bench_random_edge(backends["numba"], 7, 1)
        bench_murty_pi(backends["numba"], 7, 1)

    rows = []
    for label, n, fn, amount in [
        ("random-edge walks", 11, bench_random_edge, args.trials),
        ("random-edge walks", 13, bench_random_edge, args.trials),
        ("murty-pi walks", 15, bench_murty_pi, args.runs),
        ("murty-pi walks", 21, bench_murty_pi, args.runs),
    ]:
        times = {}
        steps = {}
        for name, k in backends.items():
            times[name], steps[name] = fn(k, n, amount)
        if len(steps) == 2 and steps["numba"] != steps["python"]:
            raise AssertionError(f"backends disagree on {label} n={n}")
        rows.append((label, n, amount, steps[min(steps)], times))

    print(f"{'benchmark':<20} {'n':>3} {'count':>6} {'steps':>10} "
          f"{'python [s]':>11} {'numba [s]':>10} {'speedup':>8}")
    for label, n, amount, steps, times in rows:
        py = times.get("python", float("nan"))
        nb = times.get("numba")
        speed = f"{py / nb:7.1f}x" if nb else "      --"
        nb_txt = f"{nb:10.3f}" if nb else "        --"
        print(f"{label:<20} {n:>3} {amount:>6} {steps:>10} {py:>11.3f} {nb_txt} {speed}")


if __name__ == "__main__":
    main()
