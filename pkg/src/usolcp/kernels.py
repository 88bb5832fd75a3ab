"""Hot inner loops for walks on the Morris orientations.

The same kernel source builds two ways: compiled with numba's @njit
(the default) or left as plain Python.  Set USOLCP_BACKEND=python to force
the fallback, USOLCP_BACKEND=numba to require compilation.  Both backends
consume identical xorshift128 streams (state words derived in rng.py), so
runs are bit-reproducible regardless of backend.
``benchmarks/bench_kernels.py`` compares the two.

Vertices are bit-packed ints (bit j-1 = coordinate j, so dimensions up to
25 sit comfortably inside int64 for the compiled path).  Outmaps are packed
the same way with a set bit marking an outgoing ('-') coordinate.
"""

from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

from .rng import xorshift_state

BACKEND_ENV = "USOLCP_BACKEND"

STATUS_SINK = 0
STATUS_STEP_LIMIT = 2

_M32 = 0xFFFFFFFF


def build_kernels(jit):
    """Build the kernel set under a decorator (numba.njit or identity)."""

    @jit
    def morris_outmap_mask(v, n):
        # Two-state transducer read: pick a zero coordinate i, then scan
        # coordinates i-1, i-2, ..., wrapping, emitting one sign per bit.
        # From state S: 1 -> '+', go T; 0 -> '-', stay S.
        # From state T: 1 -> '-', go S; 0 -> '+', go S.
        full = (1 << n) - 1
        if v == full:
            return 0
        i = 0
        while (v >> i) & 1:
            i += 1
        out = 0
        in_t = False
        p = i - 1
        if p < 0:
            p = n - 1
        for _ in range(n):
            bit = (v >> p) & 1
            if in_t:
                if bit == 1:
                    out |= 1 << p
                in_t = False
            else:
                if bit == 1:
                    in_t = True
                else:
                    out |= 1 << p
            p -= 1
            if p < 0:
                p = n - 1
        return out

    @jit
    def popcount(m):
        c = 0
        while m:
            m &= m - 1
            c += 1
        return c

    @jit
    def nth_set_bit(m, r):
        # index of the r-th (0-based) set bit of m
        c = 0
        while True:
            if (m >> c) & 1:
                if r == 0:
                    return c
                r -= 1
            c += 1

    @jit
    def xs128_next(st):
        t = (st[0] ^ ((st[0] << 11) & _M32)) & _M32
        st[0] = st[1]
        st[1] = st[2]
        st[2] = st[3]
        st[3] = ((st[3] ^ (st[3] >> 19)) ^ (t ^ (t >> 8))) & _M32
        return st[3]

    @jit
    def murty_pi_walk(start, n, pi, max_steps):
        # pi[j] = 0-based coordinate scanned at position j; the rule flips
        # the first outgoing coordinate in scan order.
        v = start
        steps = 0
        while True:
            o = morris_outmap_mask(v, n)
            if o == 0:
                return v, steps, STATUS_SINK
            if steps >= max_steps:
                return v, steps, STATUS_STEP_LIMIT
            for j in range(n):
                c = pi[j]
                if (o >> c) & 1:
                    v ^= 1 << c
                    break
            steps += 1

    @jit
    def random_edge_walk(start, n, st, max_steps):
        v = start
        steps = 0
        while True:
            o = morris_outmap_mask(v, n)
            if o == 0:
                return v, steps, STATUS_SINK
            if steps >= max_steps:
                return v, steps, STATUS_STEP_LIMIT
            r = xs128_next(st) % popcount(o)
            v ^= 1 << nth_set_bit(o, r)
            steps += 1

    @jit
    def random_edge_level1_stats(n, st, needed, max_steps, up, tot):
        # Walk from 0, restarting at the sink, until `needed` visits to
        # level-1 vertices have been observed.  At each such visit with
        # upper-minus count L, tot[L] is bumped, and up[L] too when the
        # pivot lands on the unique outgoing zero coordinate.  Also counts
        # steps along which the level increased (expected: none).
        full = (1 << n) - 1
        v = 0
        o = morris_outmap_mask(v, n)
        observed = 0
        violations = 0
        steps = 0
        while observed < needed and steps < max_steps:
            if o == 0:
                v = 0
                o = morris_outmap_mask(v, n)
                continue
            ell = popcount(o & ~v & full)
            big_l = popcount(o & v)
            r = xs128_next(st) % (ell + big_l)
            c = nth_set_bit(o, r)
            if ell == 1:
                tot[big_l] += 1
                if (v >> c) & 1 == 0:
                    up[big_l] += 1
                observed += 1
            v ^= 1 << c
            o = morris_outmap_mask(v, n)
            if o != 0 and popcount(o & ~v & full) > ell:
                violations += 1
            steps += 1
        return observed, violations, steps

    return SimpleNamespace(
        morris_outmap_mask=morris_outmap_mask,
        popcount=popcount,
        xs128_next=xs128_next,
        murty_pi_walk=murty_pi_walk,
        random_edge_walk=random_edge_walk,
        random_edge_level1_stats=random_edge_level1_stats,
    )


def _build_python():
    return build_kernels(lambda f: f)


def _build_numba():
    from numba import njit

    return build_kernels(njit)


def _load():
    choice = os.environ.get(BACKEND_ENV, "").strip().lower()
    if choice in ("python", "py"):
        return "python", _build_python()
    if choice == "numba":
        return "numba", _build_numba()
    if choice:
        raise ValueError(f"unknown {BACKEND_ENV} value {choice!r}; use 'numba' or 'python'")
    try:
        return "numba", _build_numba()
    except ImportError:
        return "python", _build_python()


BACKEND_NAME, _K = _load()


def backend_name() -> str:
    return BACKEND_NAME


def morris_outmap_mask(v: int, n: int) -> int:
    return int(_K.morris_outmap_mask(v, n))


def murty_pi_run(n: int, start_mask: int, pi, max_steps: int):
    """Run the reshuffled least-index rule on the n-dim Morris orientation.

    `pi` is the 1-based permutation tuple; returns (final_mask, steps, status).
    """
    pi_arr = np.array([p - 1 for p in pi], dtype=np.int64)
    v, steps, status = _K.murty_pi_walk(start_mask, n, pi_arr, max_steps)
    return int(v), int(steps), int(status)


def random_edge_run(n: int, start_mask: int, seed: int, max_steps: int):
    """Seeded uniform-random-outgoing-edge walk; returns (final, steps, status)."""
    st = np.array(xorshift_state(seed), dtype=np.int64)
    v, steps, status = _K.random_edge_walk(start_mask, n, st, max_steps)
    return int(v), int(steps), int(status)


def random_edge_level1(n: int, seed: int, observations: int, max_steps: int):
    """Collect level-1 transition statistics of the random-edge walk.

    Returns (up_counts, total_counts, observed, level_violations, steps)
    where the arrays are indexed by the upper-minus count L.
    """
    st = np.array(xorshift_state(seed), dtype=np.int64)
    up = np.zeros(n + 1, dtype=np.int64)
    tot = np.zeros(n + 1, dtype=np.int64)
    observed, violations, steps = _K.random_edge_level1_stats(
        n, st, observations, max_steps, up, tot
    )
    return up, tot, int(observed), int(violations), int(steps)
