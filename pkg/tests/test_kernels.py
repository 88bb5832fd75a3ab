"""Backend equivalence: the compiled kernels, the pure-Python kernels, and
the traced engine must agree bit for bit."""

import numpy as np
import pytest

from usolcp import kernels
from usolcp.cube import all_vertices, pack, unpack, zeros
from usolcp.kernels import build_kernels
from usolcp.pivot import murty_pi as murty_pi_rule, random_edge, run
from usolcp.rng import Prng, XorShift128, derive_seed, xorshift_state
from usolcp.uso import MINUS, MorrisOracle, morris_outmap

PY = build_kernels(lambda f: f)


def mask_to_outmap(mask, n):
    return tuple(MINUS if mask >> j & 1 else 1 for j in range(n))


@pytest.mark.parametrize("n", [3, 5, 7])
def test_morris_mask_matches_transducer(n):
    for v in all_vertices(n):
        want = morris_outmap(n, v)
        assert mask_to_outmap(kernels.morris_outmap_mask(pack(v), n), n) == want
        assert mask_to_outmap(PY.morris_outmap_mask(pack(v), n), n) == want


def test_backends_agree_on_walks():
    for n in (3, 5, 7):
        for trial in range(5):
            seed = derive_seed(5, n, trial)
            st1 = np.array(xorshift_state(seed), dtype=np.int64)
            st2 = np.array(xorshift_state(seed), dtype=np.int64)
            a = kernels._K.random_edge_walk(0, n, st1, 10 ** 6)
            b = PY.random_edge_walk(0, n, st2, 10 ** 6)
            assert tuple(int(x) for x in a) == tuple(int(x) for x in b)


def test_xorshift_stream_matches_kernel():
    seed = 1234
    st = np.array(xorshift_state(seed), dtype=np.int64)
    py_rng = XorShift128(seed)
    for _ in range(100):
        assert int(PY.xs128_next(st)) == py_rng.next_u32()


def test_murty_pi_kernel_matches_engine():
    for n in (3, 5, 7):
        for trial in range(4):
            pi = Prng(derive_seed(6, n, trial)).permutation(n)
            start = Prng(derive_seed(7, n, trial)).below(1 << n)
            final, steps, status = kernels.murty_pi_run(n, start, pi, 10 ** 5)
            trace = run(MorrisOracle(n), murty_pi_rule(pi), unpack(start, n))
            assert status == kernels.STATUS_SINK
            assert steps == trace.step_count
            assert unpack(final, n) == trace.final_vertex


def test_random_edge_kernel_matches_engine():
    for n in (3, 5):
        for trial in range(4):
            seed = derive_seed(8, n, trial)
            final, steps, status = kernels.random_edge_run(n, 0, seed, 10 ** 6)
            trace = run(
                MorrisOracle(n), random_edge(seed), zeros(n), max_steps=10 ** 6
            )
            assert status == kernels.STATUS_SINK
            assert steps == trace.step_count
            assert unpack(final, n) == trace.final_vertex


def test_step_limit_status():
    _, steps, status = kernels.random_edge_run(5, 0, 1, 3)
    assert status == kernels.STATUS_STEP_LIMIT
    assert steps == 3


def test_level1_stats_shape():
    n = 7
    up, tot, observed, violations, steps = kernels.random_edge_level1(
        n, 99, 2000, 10 ** 7
    )
    assert observed == 2000
    assert violations == 0
    assert int(tot.sum()) == observed
    assert all(int(u) <= int(t) for u, t in zip(up, tot))
    # at a level-1 vertex the upper-minus count is at most (n-1)/2
    assert all(int(t) == 0 for t in tot[(n - 1) // 2 + 1:])
    assert steps >= observed


def test_level1_stats_backends_agree():
    n = 7
    a = kernels.random_edge_level1(n, 42, 500, 10 ** 6)
    up = np.zeros(n + 1, dtype=np.int64)
    tot = np.zeros(n + 1, dtype=np.int64)
    st = np.array(xorshift_state(42), dtype=np.int64)
    b = PY.random_edge_level1_stats(n, st, 500, 10 ** 6, up, tot)
    assert list(a[0]) == list(up)
    assert list(a[1]) == list(tot)
    assert (a[2], a[3]) == (int(b[0]), int(b[1]))


def test_backend_name_reported():
    assert kernels.backend_name() in ("numba", "python")


def test_env_flag_selects_python_backend():
    import os
    import subprocess
    import sys

    env = dict(os.environ, USOLCP_BACKEND="python")
    code = (
        "from usolcp import kernels; "
        "assert kernels.backend_name() == 'python'; "
        "print(kernels.murty_pi_run(5, 0, (1, 2, 3, 4, 5), 1000))"
    )
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True
    )
    assert out.returncode == 0, out.stderr
    final, steps, status = eval(out.stdout.strip())
    assert (steps, status) == (13, kernels.STATUS_SINK)


def test_env_flag_rejects_unknown():
    import os
    import subprocess
    import sys

    env = dict(os.environ, USOLCP_BACKEND="fortran")
    out = subprocess.run(
        [sys.executable, "-c", "import usolcp.kernels"],
        env=env,
        capture_output=True,
        text=True,
    )
    assert out.returncode != 0
    assert "USOLCP_BACKEND" in out.stderr
