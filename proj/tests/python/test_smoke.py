import json
import os
import tempfile

import pytest

import subknap


def coverage_pair():
    doc = {
        "n": 2,
        "costs": [0.5, 0.5],
        "objective": {
            "type": "coverage",
            "universe_weights": [0, 1, 1, 1],
            "covers": [[1, 2], [2, 3]],
        },
    }
    return subknap.instance_from_json(json.dumps(doc), "pair")


def test_instance_from_json_and_values():
    inst = coverage_pair()
    assert len(inst) == 2
    assert inst.family == "coverage"
    assert inst.value([0, 1]) == 3.0
    assert inst.value([]) == 0.0
    assert inst.cost([0, 1]) == pytest.approx(1.0)


def test_eval_exact_counts_queries():
    inst = coverage_pair()
    value, queries = subknap.eval_exact(inst, [], {0: 0.5, 1: 0.5})
    assert value == pytest.approx(1.75)
    assert queries == 4


def test_round_point_keeps_the_integral_part():
    inst = subknap.generate("facility", 6, seed=3)
    chosen = subknap.round_point(inst, [2], {0: 0.5, 1: 0.5}, seed=7)
    assert 2 in chosen
    assert len(chosen) == 2


def test_run_every_algorithm_is_feasible():
    inst = subknap.generate("concave_modular", 10, seed=4, cost_max=0.3)
    opt = subknap.run(inst, "brute")["value"]
    for algorithm in ("knapsack", "density", "sviridenko", "brute"):
        row = subknap.run(inst, algorithm, epsilon=0.5)
        assert row["cost"] <= 1.0 + 1e-9
        assert row["value"] <= opt * (1 + 1e-9)
    report = subknap.run(inst, "knapsack", mode="analysis", t=2, traces=True)
    assert report["knapsack"]["value"] >= 0.5 * opt
    assert "phases" in report["knapsack"]


def test_verify_report():
    inst = subknap.generate("coverage", 9, seed=2, cost_max=0.3)
    report = subknap.verify(inst, epsilon=0.5, t=2, r=2, phases=2, trials=500)
    assert report["ok"]
    names = {c["name"] for c in report["checks"]}
    assert {"opt1_gain", "opt1_costs", "large_costs", "phase_budget", "phase_recursion"} <= names


def test_file_round_trip():
    inst = subknap.generate("coverage", 7, seed=1)
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "inst.json")
        subknap.save_instance(path, inst)
        back = subknap.load_instance(path)
    assert back.costs == inst.costs
    assert back.value(list(range(7))) == inst.value(list(range(7)))


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        subknap.generate("nope", 3)
    with pytest.raises(ValueError):
        subknap.instance_from_json("{")
    with pytest.raises(subknap.CapacityError):
        subknap.run(subknap.generate("coverage", 30), "brute")
    with pytest.raises(subknap.CapacityError):
        subknap.verify(subknap.generate("coverage", 17))


def test_csv_header():
    assert subknap.csv_header() == "instance,algorithm,n,epsilon,value,cost,queries,millis,ratio_opt"
