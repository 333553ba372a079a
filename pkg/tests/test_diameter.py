import math

import pytest

from src.core import base_of, build_graph, graph_from_edges
from src.decomposition import MIN_R
from src.diameter import default_r, diameter, prepare
from src.diameter import pipeline
from src.errors import NegativeCycle, TieDetected
from src.oracles import apsp_oracle, check_diameter, generate, run_audit
from src.parser import grid, random_triangulation
from src.settings import Counters, Settings

from conftest import path_graph, triangle_graph


def _floyd(g):
    n = g.n
    d = [[0 if i == j else math.inf for j in range(n)] for i in range(n)]
    for e in range(g.m):
        d[g.tail[e]][g.head[e]] = min(d[g.tail[e]][g.head[e]], g.base[e])
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


def test_triangle():
    result = diameter(triangle_graph())
    assert result.value == 1


def test_unit_grid():
    result = diameter(grid(3))
    assert result.value == 4
    assert set(result.witness) in ({0, 8}, {2, 6})
    assert diameter(grid(3), settings=Settings(strict=True)).value == 4


def test_single_vertex():
    g = build_graph(1, [], [[]])
    assert diameter(g).value == 0


def test_negative_arc():
    coords = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
    edges = [(0, 1, -2, 5), (1, 2, 3, 1), (2, 3, -1, 4), (3, 0, 6, 2), (0, 2, 4, 4)]
    g = graph_from_edges(4, edges, coords)
    want = max(max(row) for row in _floyd(g))
    assert diameter(g).value == want


def test_negative_cycle():
    with pytest.raises(NegativeCycle):
        diameter(path_graph([1], back=[-2]))


def test_prepare_triangulates_and_reduces():
    g = grid(4, max_len=5, seed=1, directed=True)
    pg, phi = prepare(g, 3)
    assert all(b >= 0 for b in pg.base)
    assert any(pg.tiebreak)
    assert pg.edge_count == g.edge_count + 9
    assert phi == [0] * g.n


def test_cases_and_counters():
    g = random_triangulation(80, seed=5, max_len=30, directed=True)
    counters = Counters()
    result = diameter(g, r=20, counters=counters)
    assert result.pieces > 1
    assert result.value == max(v for v in result.cases.values() if v is not None)
    assert counters.dijkstra > 0
    assert result.piece_boundary <= result.boundary
    assert set(result.to_dict()) >= {'value', 'witness', 'cases', 'counters', 'timings', 'r'}


def test_matches_apsp_small():
    for seed in range(4):
        g = random_triangulation(60, seed=seed, max_len=100, directed=True)
        assert check_diameter(g, r=18) == []


def test_threads_do_not_change_result():
    g = generate('cylinder', 70, 4)
    one = diameter(g, r=20, settings=Settings(threads=1))
    many = diameter(g, r=20, settings=Settings(threads=4))
    assert (one.value, one.witness) == (many.value, many.witness)


def test_default_r():
    assert default_r(8) == MIN_R
    assert MIN_R < default_r(5000) <= 300


def test_retry_with_next_seed(monkeypatch):
    original = pipeline._diameter_once
    calls = []

    def flaky(g, r, settings, seed, counters, cache):
        calls.append(seed)
        if len(calls) == 1:
            raise TieDetected("并列")
        return original(g, r, settings, seed, counters, cache)

    monkeypatch.setattr(pipeline, '_diameter_once', flaky)
    settings = Settings(seed=10)
    result = diameter(grid(3), settings=settings)
    assert calls == [10, 11]
    assert result.seed == 11
    assert result.value == 4


def test_retries_exhausted(monkeypatch):
    def always(*args):
        raise TieDetected("并列")

    monkeypatch.setattr(pipeline, '_diameter_once', always)
    with pytest.raises(TieDetected):
        diameter(grid(3), settings=Settings(max_retries=2))


def test_witness_distance():
    g = grid(5, max_len=9, seed=4, directed=True)
    result = diameter(g, r=16)
    dist = apsp_oracle(g)
    a, c = result.witness
    assert base_of(dist[a][c]) == result.value


@pytest.mark.slow
def test_diameter_audit():
    report = run_audit('diameter', count=10, n=150, r=30)
    assert report.ok, report.failures
