import math

import pytest

from src.core import triangulate
from src.decomposition import MIN_R, adjacency_of, components, r_division, separator
from src.diameter import prepare
from src.errors import AssertionBreach, TargetTooSmall
from src.parser import grid, random_triangulation


@pytest.mark.parametrize('k', [10, 20])
def test_grid_separator(k):
    g = triangulate(grid(k))
    sep = separator(g)
    assert len(sep) <= 4 * k
    parts = components(adjacency_of(g), set(sep))
    assert max(len(c) for c in parts) <= 2 * g.n / 3


def test_separator_tiny(triangle):
    assert len(separator(triangle)) == 1


def test_rdivision_grid():
    pg, _ = prepare(grid(12), 0)
    r = 36
    rdiv = r_division(pg, r)
    report = rdiv.audit()
    assert report['max_vertices'] <= r
    assert report['boundary_ok']
    assert report['holes_ok']
    assert report['pieces_ok']
    assert sum(p.graph.edge_count for p in rdiv.pieces) == pg.edge_count


def test_rdivision_boundary_shared():
    pg, _ = prepare(random_triangulation(120, seed=1), 1)
    rdiv = r_division(pg, 30)
    assert set(rdiv.containing) == set(range(pg.n))
    for v in rdiv.boundary:
        assert len(rdiv.piece_of(v)) > 1
    for p in rdiv.pieces:
        assert sorted(p.boundary_global()) == sorted(set(p.global_ids) & set(rdiv.boundary))
        assert all(p.hole_of(b) is not None for b in p.boundary)


def test_rdivision_whole_graph():
    pg, _ = prepare(grid(4), 0)
    rdiv = r_division(pg, 100)
    assert len(rdiv.pieces) == 1
    assert rdiv.boundary == []
    assert rdiv.pieces[0].n == pg.n


def test_rdivision_target_too_small():
    pg, _ = prepare(grid(6), 0)
    with pytest.raises(TargetTooSmall):
        r_division(pg, MIN_R - 1)


def test_rdivision_piece_count_scales():
    pg, _ = prepare(grid(16), 0)
    few = r_division(pg, 128)
    many = r_division(pg, 32)
    assert len(many.pieces) > len(few.pieces)
    assert len(many.pieces) <= 16 * math.ceil(pg.n / 32)


def test_rdivision_piece_cap():
    pg, _ = prepare(grid(12), 0)
    with pytest.raises(AssertionBreach):
        r_division(pg, 32, c_p=0, strict=True)
    assert len(r_division(pg, 32, c_p=0).pieces) > 0
