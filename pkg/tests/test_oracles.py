import pytest

from src.core import base_of, pack
from src.errors import BadParams
from src.oracles import (
    AuditReport, apsp_oracle, generate, random_instances, run_audit, tri_oracle, vd_oracle,
)
from src.parser import grid

from conftest import path_graph


def test_apsp_path():
    g = path_graph([1, 2], back=[4, 4])
    dist = apsp_oracle(g)
    assert [base_of(x) for x in dist[0]] == [0, 1, 3]
    assert [base_of(x) for x in dist[2]] == [8, 4, 0]


def test_vd_oracle_ties_go_to_lower_id():
    g = path_graph([1, 1])
    assert vd_oracle(g, [2, 0], {0: 0, 2: 0}) == [0, 0, 2]
    assert vd_oracle(g, [0, 2], {0: pack(2), 2: 0}) == [0, 2, 2]


def test_tri_oracle_needs_three_groups(grid3):
    with pytest.raises(BadParams):
        tri_oracle(grid3, [0, 2], {0: 0, 2: 0})


def test_tri_oracle_corner_sites(grid3):
    faces = tri_oracle(grid3, [0, 2, 8], {0: 0, 2: 0, 8: 0})
    assert grid3.holes[0] in faces


def test_generate_kinds():
    assert generate('grid', 36, 0).n == 36
    assert len(generate('cylinder', 36, 0).holes) == 2
    assert generate('random', 36, 0).n == 36
    with pytest.raises(BadParams):
        generate('torus', 36, 0)


def test_random_instances_deterministic():
    a = [(i.label, i.sites, i.weights) for i in random_instances('grid', 3, 25, seed=1)]
    b = [(i.label, i.sites, i.weights) for i in random_instances('grid', 3, 25, seed=1)]
    assert a == b
    assert all(len(sites) >= 2 for _, sites, _ in a)


def test_report():
    report = AuditReport()
    report.add([], 'a')
    report.add(['差异'], 'b')
    assert report.checked == 2
    assert not report.ok
    assert report.failures == ['b: 差异']


def test_unknown_check():
    with pytest.raises(BadParams):
        run_audit('everything')


def test_oracle_limit(monkeypatch):
    from src.oracles import brute
    monkeypatch.setattr(brute, 'ORACLE_LIMIT', 4)
    with pytest.raises(BadParams):
        apsp_oracle(grid(3))


@pytest.mark.slow
@pytest.mark.parametrize('what', ['vd', 'bisector', 'tri', 'farthest'])
def test_audit_batches(what):
    report = run_audit(what, count=6, n=80, seed=11, r=30)
    assert report.ok, report.failures
