import csv
import json

from usolcp.experiments import (
    exp_greedy_cycle,
    exp_k_bound,
    exp_random_edge,
    exp_thm_general,
    exp_thm_id,
    milestone_vertex,
    murty_identity_count,
    murty_pi_bound,
)


def test_iteration_count_formulas():
    assert murty_identity_count(3) == 5
    assert murty_identity_count(5) == 13
    assert murty_identity_count(25) == 313
    assert murty_pi_bound(3) == 12
    assert murty_pi_bound(5) == 39


def test_milestone_vertices():
    assert milestone_vertex(5, 0) == (0, 0, 0, 0, 0)
    assert milestone_vertex(5, 1) == (0, 1, 0, 0, 0)
    assert milestone_vertex(5, 2) == (0, 1, 0, 1, 0)


def test_thm_id_small():
    res = exp_thm_id(ns=(3, 5))
    assert res.passed
    totals = {c.n: c.observed for c in res.cells if c.params.startswith("rule=murty")}
    assert totals == {3: 5, 5: 13}


def test_thm_general_exhaustive_n3():
    res = exp_thm_general(ns=(3,), exhaustive_ns=(3,))
    assert res.passed
    worst = [c for c in res.cells if c.params.startswith("mode=exhaustive")][0]
    assert worst.observed <= 12


def test_thm_general_sampled_small():
    res = exp_thm_general(ns=(7,), exhaustive_ns=(), samples=50)
    assert res.passed


def test_k_bound_small():
    res = exp_k_bound(ns=(2, 3), instances=4, sampled_starts=8)
    assert res.passed


def test_random_edge_small():
    res = exp_random_edge(
        ns=(7, 9), trials=20, level_n=7, level_observations=1500
    )
    # no bound cells for n < 11 besides monotone means and level stats
    assert res.passed
    assert res.info["per_n"][7]["mean"] > 0
    assert res.info["per_n"][7]["factorial_reference"] == 6


def test_greedy_cycle():
    res = exp_greedy_cycle()
    assert res.passed
    assert set(res.info["cycling_starts"]) >= {"110", "011", "101"}


def test_result_files_byte_stable(tmp_path):
    a = exp_thm_general(ns=(3,), exhaustive_ns=(3,))
    b = exp_thm_general(ns=(3,), exhaustive_ns=(3,))
    pa, pb = tmp_path / "a.csv", tmp_path / "b.csv"
    a.to_csv(pa)
    b.to_csv(pb)
    assert pa.read_bytes() == pb.read_bytes()
    ja, jb = tmp_path / "a.json", tmp_path / "b.json"
    a.write_json(ja)
    b.write_json(jb)
    assert ja.read_bytes() == jb.read_bytes()


def test_result_files(tmp_path):
    res = exp_greedy_cycle()
    csv_path = tmp_path / "out.csv"
    json_path = tmp_path / "out.json"
    res.to_csv(csv_path)
    res.write_json(json_path)
    rows = list(csv.reader(csv_path.open()))
    assert rows[0] == ["experiment", "n", "params", "observed", "bound", "verdict"]
    assert all(r[0] == "greedy-cycle" for r in rows[1:])
    payload = json.loads(json_path.read_text())
    assert payload["experiment"] == "greedy-cycle"
    assert payload["passed"] is True
