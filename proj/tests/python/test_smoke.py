import dualgraph as dg
import pytest


def test_seed_derivation_is_deterministic():
    assert dg.derive_seed(5, [1, 2]) == dg.derive_seed(5, [1, 2])
    assert dg.derive_seed(5, [1]) != dg.derive_seed(5, [2])
    assert dg.trial_seed(1, 0) != dg.trial_seed(1, 1)


def test_build_and_verify_ring():
    g = dg.build_network({"builder": "ring", "params": {"n": 6}, "overlay": "none"})
    assert g["n"] == 6 and len(g["reliable"]) == 6 and g["unreliable"] == []
    assert dg.verify(g, [1, 3, 5])["valid"]
    bad = dg.verify(g, [1, 2])
    assert not bad["valid"] and bad["violations"]


def test_run_experiment_matches_itself():
    cfg = {
        "kind": "isolation",
        "game": {"player": "exclusion", "params": {"k": 16, "max_rounds": 4}},
        "trials": 50,
        "seed": 3,
    }
    a, rows, code = dg.run_experiment(cfg)
    b, _, _ = dg.run_experiment(cfg, jobs=4)
    assert a == b and code == 0
    win = next(r for r in rows if r["metric"] == "win")
    assert int(win["count"]) == 50


def test_bad_config_raises():
    with pytest.raises(ValueError):
        dg.run_experiment({"network": {"builder": "moebius"}})


def test_view_graph_chi():
    assert dg.view_graph_chi(1, 5)[:2] == (3, True)
    assert dg.block_shuffle_length(1024, 1.0) == 4
