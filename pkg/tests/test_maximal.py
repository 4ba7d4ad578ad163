import json

import pytest

from cubicgit.feasibility import dominates
from cubicgit.maximal import (
    GoldenMismatch,
    down_closure,
    enumerate_maximal,
    feasible_antichains,
    golden_consistency,
    is_inclusion_maximal,
    load_golden,
    match_labels,
    verify_record,
)
from cubicgit.sampling import oracle_maximal
from cubicgit.strata import catalog_data
from cubicgit.checks import data_path


def test_records_are_valid(table1_records, table2_records):
    for r in table1_records + table2_records:
        assert verify_record(r) == []
        assert is_inclusion_maximal(r)


def test_generators_form_an_antichain(table1_records):
    for r in table1_records:
        g = list(r.generators)
        assert not any(a != b and dominates(a, b) for a in g for b in g)
        assert down_closure(g, 6, 3) == r.members


def test_labels_and_tags(table1_records, table2_records):
    t1 = match_labels(list(table1_records), load_golden(data_path("table1")))
    assert [r.label for r in t1] == [f"S{i}" for i in range(1, 9)]
    t2 = match_labels(list(table2_records), load_golden(data_path("table2")))
    assert any(t.startswith("included in") for r in t2 for t in r.tags)


def test_golden_files_are_self_consistent():
    for name in ("table1", "table2"):
        assert golden_consistency(load_golden(data_path(name))) == []


def test_s1_record(table1_records):
    s1 = next(r for r in table1_records if r.generators.strings() == ["x0*x2^2"])
    assert s1.witness.weights == (2, 2, -1, -1, -1, -1)
    assert len(s1.members) == 40


def test_corrupted_golden_is_reported(tmp_path, table1_records):
    data = json.loads(open(data_path("table1")).read())
    data["rows"].pop()
    p = tmp_path / "table1.json"
    p.write_text(json.dumps(data))
    with pytest.raises(GoldenMismatch) as exc:
        match_labels(list(table1_records), load_golden(p))
    assert exc.value.extra and "extra computed" in str(exc.value)


def test_wrong_weights_in_golden(tmp_path):
    data = json.loads(open(data_path("table1")).read())
    data["rows"][0]["weights"] = [1, 1, 1, 1, -2, -2]
    p = tmp_path / "t.json"
    p.write_text(json.dumps(data))
    assert golden_consistency(load_golden(p))


@pytest.mark.parametrize("n,d,bound", [(3, 3, 12), (4, 3, 12), (4, 2, 10), (5, 3, 18)])
def test_smaller_cases_match_the_sampling_oracle(n, d, bound):
    res = oracle_maximal(n, d, bound)
    for strict, key in ((False, "nonstrict"), (True, "strict")):
        exact = {r.members for r in enumerate_maximal(n, d, strict)}
        assert exact == {s for s, _ in res[key]}


def test_antichains_are_feasible():
    ants = feasible_antichains(4, 2, strict=True)
    assert ants and all(len(a) >= 1 for a in ants)


def test_catalog_data_loads():
    assert set(catalog_data()["strata"]) == {
        "alpha", "beta", "gamma", "delta", "epsilon", "phi", "sigma", "tau", "chi", "zeta", "omega"}


def test_cubic_threefold_counts():
    assert len(enumerate_maximal(5, 3, False)) == 6
    assert len(enumerate_maximal(5, 3, True)) == 6
