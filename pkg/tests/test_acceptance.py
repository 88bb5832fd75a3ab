"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as they
complete.  Budgets are wall-clock and generous on one core; the compiled
kernel backend is assumed (set USOLCP_BACKEND=python only for debugging,
the budget assertions may then be exceeded).
"""

import time

import pytest

from usolcp.cube import all_vertices, zeros
from usolcp.experiments import (
    exp_greedy_cycle,
    exp_k_bound,
    exp_random_edge,
    exp_thm_general,
    milestone_vertex,
    murty_identity_count,
)
from usolcp.gen import gen_p_matrix, gen_q, gen_random_orientation
from usolcp.lcp import LcpInstance
from usolcp.pivot import murty, run
from usolcp.rng import derive_seed
from usolcp.uso import (
    MorrisOracle,
    PlcpOracle,
    antipodal_relabel,
    morris_instance,
    morris_table,
    tabulate,
    uniform,
)
from usolcp.verify import (
    holt_klee,
    is_locally_up_uniform,
    is_two_uniform,
    is_two_up_uniform,
    is_uso,
    level,
    longest_path_exact,
    monotone_path_exists,
    potential,
    unique_completion_holds,
    upper_minus_count,
)

from conftest import k_table

SEED = 20240905


def report(num, name, ok, detail=""):
    tag = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {num:2d} {name}: {tag} {detail}".rstrip())
    assert ok, f"criterion {num} ({name}) failed: {detail}"


@pytest.fixture(scope="module")
def morris_tables():
    return {n: morris_table(n) for n in (3, 5, 7)}


@pytest.fixture(scope="module")
def p_tables():
    tables = []
    for n in range(2, 7):
        for j in range(10):
            strategy = "gram" if j % 2 == 0 else "k-ppt"
            m = gen_p_matrix(n, derive_seed(SEED, 50, n, j), strategy)
            q = gen_q(m, n, derive_seed(SEED, 51, n, j))
            tables.append(tabulate(PlcpOracle(LcpInstance(n, m, q))))
    return tables


@pytest.fixture(scope="module")
def k_tables():
    return [k_table(n, derive_seed(SEED, 52, n, j)) for n in range(2, 7) for j in range(5)]


def test_criterion_01_identity_rule_exact_count():
    t0 = time.perf_counter()
    bad = []
    for n in range(3, 26, 2):
        trace = run(MorrisOracle(n), murty(), zeros(n))
        if trace.status != "sink-reached" or trace.step_count != murty_identity_count(n):
            bad.append((n, trace.step_count))
    elapsed = time.perf_counter() - t0
    report(1, "identity rule takes (n^2+1)/2 steps, n=3..25", not bad and elapsed < 1.0,
           f"violations={bad} elapsed={elapsed:.3f}s (budget 1s)")


def test_criterion_02_milestone_schedule():
    bad = []
    for n in range(3, 26, 2):
        trace = run(MorrisOracle(n), murty(), zeros(n))
        seq = trace.visited()
        pos = {}
        for idx, v in enumerate(seq):
            pos.setdefault(v, idx)
        prev = 0
        for i in range((n - 1) // 2 + 1):
            v_i = milestone_vertex(n, i)
            if v_i not in pos:
                bad.append((n, i, "missing"))
                continue
            if i > 0 and pos[v_i] - prev != 4 * (i - 1) + 3:
                bad.append((n, i, pos[v_i] - prev))
            prev = pos[v_i]
        if trace.step_count - prev != (n + 1) // 2:
            bad.append((n, "final", trace.step_count - prev))
    report(2, "milestones at 4i+3 spacing, final leg (n+1)/2", not bad, f"violations={bad}")


def test_criterion_03_reshuffled_rule_quadratic_bound():
    t0 = time.perf_counter()
    res = exp_thm_general(ns=(3, 5, 7, 9, 11, 13, 15), exhaustive_ns=(3, 5),
                          samples=1000, seed=SEED)
    elapsed = time.perf_counter() - t0
    fails = [c.params for c in res.failures()]
    report(3, "all permutations/starts within 2n^2-(5n-3)/2", res.passed and elapsed < 60,
           f"failures={fails} elapsed={elapsed:.1f}s (budget 60s)")


def test_criterion_04_k_instances_shortest_paths_and_2n_bound():
    t0 = time.perf_counter()
    res = exp_k_bound(ns=tuple(range(2, 9)), instances=100, seed=SEED)
    elapsed = time.perf_counter() - t0
    fails = [(c.n, c.params, c.observed) for c in res.failures()]
    report(4, "K instances: exact from 0, <=2n anywhere, PPT too",
           res.passed and elapsed < 120,
           f"failures={fails} elapsed={elapsed:.1f}s (budget 120s)")


def test_criterion_05_uso_axiom_and_holt_klee(morris_tables, p_tables):
    t0 = time.perf_counter()
    bad = []
    for n, t in morris_tables.items():
        if not is_uso(t).passed or not holt_klee(t).passed:
            bad.append(("morris", n))
    for idx, t in enumerate(p_tables):
        if not is_uso(t).passed or not holt_klee(t).passed:
            bad.append(("p-instance", idx))
    elapsed = time.perf_counter() - t0
    report(5, f"uso+holt-klee on morris 3/5/7 and {len(p_tables)} P-instances",
           not bad and len(p_tables) >= 50 and elapsed < 60,
           f"violations={bad} elapsed={elapsed:.1f}s (budget 60s)")


def test_criterion_06_transducer_equals_algebra():
    bad = []
    for n in (3, 5, 7, 9):
        t1 = tabulate(MorrisOracle(n))
        t2 = tabulate(PlcpOracle(morris_instance(n)))
        if t1 != t2:
            bad.append(n)
    report(6, "transducer table == algebraic table, n=3,5,7,9", not bad, f"mismatch at n={bad}")


def test_criterion_07_unique_completion_equivalence(morris_tables, p_tables, k_tables):
    tables = [gen_random_orientation(3, derive_seed(SEED, 53, s)) for s in range(500)]
    tables += list(morris_tables.values()) + p_tables + k_tables
    tables += [tabulate(uniform(n)) for n in range(2, 7)]
    bad = 0
    for t in tables:
        if is_uso(t).passed != unique_completion_holds(t).passed:
            bad += 1
    report(7, f"uso <=> unique-completion on {len(tables)} tables", bad == 0,
           f"disagreements={bad}")


def test_criterion_08_uniformity_hierarchy(morris_tables, k_tables):
    bad = []
    for t in k_tables:
        if not is_two_uniform(t).passed or not is_locally_up_uniform(t).passed:
            bad.append(("k-table", t.n))
    for n in (3, 5):
        rep = is_two_up_uniform(morris_tables[n])
        if rep.passed or not rep.witness:
            bad.append(("morris-2uu-should-fail", n))
        relabeled = tabulate(antipodal_relabel(MorrisOracle(n)))
        if not is_two_up_uniform(relabeled).passed:
            bad.append(("relabeled-morris-2uu", n))
    agreement_corpus = [t for t in k_tables if t.n <= 5]
    agreement_corpus += [morris_tables[3], morris_tables[5]]
    agreement_corpus += [tabulate(uniform(n)) for n in range(2, 6)]
    agreement_corpus += [tabulate(antipodal_relabel(MorrisOracle(n))) for n in (3, 5)]
    agreement_corpus += [gen_random_orientation(4, derive_seed(SEED, 54, s)) for s in range(50)]
    agreement_corpus += [gen_random_orientation(5, derive_seed(SEED, 55, s)) for s in range(20)]
    disagree = sum(
        1
        for t in agreement_corpus
        if is_locally_up_uniform(t).passed != is_two_up_uniform(t).passed
    )
    report(8, "K 2-uniform; morris fails 2uu; relabel passes; local-uu == 2uu",
           not bad and disagree == 0,
           f"violations={bad} local-uu/2uu disagreements={disagree}")


def test_criterion_09_morris_structure_invariants():
    bad = []
    for n in (3, 5, 7, 9):
        oracle = MorrisOracle(n)
        outmaps = {v: oracle.outmap(v) for v in all_vertices(n)}
        for v, o in outmaps.items():
            lv = level(o, v)
            assert lv + upper_minus_count(o, v) == sum(1 for s in o if s == -1)
            for j in range(1, n + 1):
                if o[j - 1] != -1:
                    continue
                u = v[: j - 1] + (1 - v[j - 1],) + v[j:]
                lu = level(outmaps[u], u)
                ok = lu == lv or lu == lv - 2 or (lv == 1 and lu == 0)
                if not ok:
                    bad.append(("level", n, v, j, lv, lu))
                for k in range(1, n + 1):
                    if v[k - 1] == 0 and u[k - 1] == 0:
                        pv = potential(o, v, k)
                        pu = potential(outmaps[u], u, k)
                        if pu > pv - 1:
                            bad.append(("potential", n, v, j, k, pv, pu))
        from usolcp.cube import cyclic_shift

        for v, o in outmaps.items():
            for s in range(1, n):
                if outmaps[cyclic_shift(v, s)] != cyclic_shift(o, s):
                    bad.append(("shift", n, v, s))
    report(9, "level steps, potential descent, shift closure (n<=9)", not bad,
           f"violations={bad[:3]}{'...' if len(bad) > 3 else ''}")


def test_criterion_10_greedy_cycling():
    res = exp_greedy_cycle(seed=SEED)
    cycling = set(res.info["cycling_starts"])
    ok = res.passed and {"110", "011", "101"} <= cycling
    report(10, "antipodal greedy cycles from weight-2 starts, solves from 0", ok,
           f"cycling_starts={sorted(cycling)}")


def test_criterion_11_random_edge_statistics():
    t0 = time.perf_counter()
    res = exp_random_edge(ns=(7, 9, 11, 13), trials=200, seed=SEED,
                          level_n=11, level_observations=100_000)
    elapsed = time.perf_counter() - t0
    fails = [(c.n, c.params, c.observed) for c in res.failures()]
    means = {n: round(res.info["per_n"][n]["mean"], 1) for n in (7, 9, 11, 13)}
    report(11, "random-edge: level-1 frequencies within 3 SE, growing means",
           res.passed and elapsed < 600,
           f"means={means} failures={fails} elapsed={elapsed:.1f}s (budget 600s)")


def test_criterion_12_monotone_paths_everywhere(morris_tables, p_tables, k_tables):
    tables = [morris_tables[3], morris_tables[5]]
    tables += [tabulate(uniform(n)) for n in range(2, 7)]
    tables += [t for t in p_tables if t.n <= 6]
    tables += [t for t in k_tables if t.n <= 6]
    bad = 0
    for t in tables:
        for v in all_vertices(t.n):
            if not monotone_path_exists(t, v):
                bad += 1
    report(12, f"hamming-length path to sink from every vertex ({len(tables)} tables)",
           bad == 0, f"missing={bad}")


def test_criterion_13_longest_path_certification(morris_tables):
    bad = []
    for n in (2, 3, 4):
        for j in range(5):
            t = k_table(n, derive_seed(SEED, 56, n, j))
            lp = longest_path_exact(t)
            if lp > 2 * n:
                bad.append((n, j, lp))
    lp3 = longest_path_exact(morris_tables[3])
    report(13, "K longest paths <= 2n (n<=4); morris-3 path >= 6",
           not bad and lp3 >= 6, f"violations={bad} morris3={lp3}")
