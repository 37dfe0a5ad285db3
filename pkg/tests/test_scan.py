import json

import pytest

from twodom.family import FamilyParams
from twodom.scan import CLASSES, ScanSpec, class_predicate, instance, reverify, scan


def test_spec_validation():
    with pytest.raises(ValueError):
        ScanSpec("planar")
    with pytest.raises(ValueError):
        ScanSpec("tree", count=0)
    with pytest.raises(ValueError):
        ScanSpec("min_degree_3", n_min=3)
    assert ScanSpec("bipartite_cactus_prop2").n_min == 4


@pytest.mark.parametrize("cls", CLASSES)
def test_instances_satisfy_their_class(cls):
    spec = ScanSpec(cls, n_max=14, count=30, seed=11)
    for i in range(spec.count):
        g = instance(spec, i)
        assert class_predicate(cls, g)
        assert spec.n_min <= g.n <= spec.n_max


def test_determinism_and_worker_independence():
    spec = ScanSpec("tree", count=40, seed=7)
    a = scan(spec).to_json()
    assert scan(spec).to_json() == a
    assert scan(spec, workers=2).to_json() == a
    assert scan(spec).to_csv() == scan(spec, workers=2).to_csv()


def test_injected_family_is_flagged():
    fam = (FamilyParams(4, (1, 2, 3, 4)), FamilyParams.ones(7))
    report = scan(ScanSpec("cactus", count=10, seed=3, inject_family=fam))
    flagged = {r.source: r.gap for r in report.violations}
    assert flagged == {"G(4;1,2,3,4)": 2, "G(7;1,1,1,1,1,1,1)": 3}
    assert report.aggregate()["violations"] == [r.index for r in report.violations]


def test_violations_are_exactly_gap_two_or_more():
    report = scan(ScanSpec("cactus", count=60, seed=1, inject_family=(FamilyParams.ones(4),)))
    assert {r.index for r in report.violations} == {r.index for r in report.records if r.gap >= 2}
    assert report.max_gap == 2
    assert sum(report.gap_histogram.values()) == len(report.records)


def test_reverify_small_violations():
    fam = (FamilyParams.ones(4),)  # 29 vertices: beyond the brute-force cap
    report = scan(ScanSpec("cactus", count=80, seed=5, inject_family=fam))
    checked = reverify(report)
    assert all(checked.values())
    assert 80 not in checked


def test_budget_skips():
    report = scan(ScanSpec("min_degree_3", n_min=26, n_max=28, count=3, seed=0, solver_budget=1))
    assert report.aggregate()["skipped"] == 3
    assert all(r.gamma2 is None for r in report.records)


def test_caro_roditty_in_aggregate():
    report = scan(ScanSpec("min_degree_3", n_max=12, count=20, seed=2))
    assert report.aggregate()["caro_roditty_violations"] == []
    assert scan(ScanSpec("tree", count=2)).aggregate()["caro_roditty_violations"] is None


def test_report_formats():
    report = scan(ScanSpec("tree", count=3, seed=9))
    data = json.loads(report.to_json())
    assert set(data) == {"spec", "aggregate", "records"}
    assert set(data["records"][0]) == {"index", "graph_hash", "n", "m", "gamma2", "a", "gap",
                                       "holds", "backend", "skipped", "source"}
    assert "runtime" in json.loads(report.to_json(timings=True))["records"][0]
    assert report.to_csv().splitlines()[0].startswith("index,graph_hash,n,m,gamma2,a,gap")
    assert report.to_text().startswith("class tree")
