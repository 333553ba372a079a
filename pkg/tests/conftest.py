"""
测试共用的小图与预处理结果
"""
import math

import pytest

from src.core import graph_from_edges, mark_holes
from src.diameter import prepare
from src.parser import cylinder, grid, random_triangulation
from src.voronoi import preprocess_piece


def triangle_graph(lengths=(1, 1, 1)):
    a, b, c = lengths
    coords = [(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2)]
    return graph_from_edges(3, [(0, 1, a, a), (1, 2, b, b), (0, 2, c, c)], coords)


def path_graph(lengths, back=None):
    """0-1-...-k 的直线路径，back 给出反向长度"""
    back = back or lengths
    coords = [(float(i), 0.0) for i in range(len(lengths) + 1)]
    edges = [(i, i + 1, lengths[i], back[i]) for i in range(len(lengths))]
    return graph_from_edges(len(coords), edges, coords)


@pytest.fixture
def triangle():
    return triangle_graph()


@pytest.fixture
def grid3():
    return grid(3)


@pytest.fixture
def small_random():
    return random_triangulation(30, seed=7, max_len=20, directed=True)


@pytest.fixture
def ring():
    return cylinder(3, 6, max_len=9, seed=3, directed=True)


@pytest.fixture
def grid_index():
    """5x5 网格，外洞上的 7 个站点"""
    g = grid(5, max_len=10, seed=11, directed=True)
    pg, _ = prepare(g, 11)
    hole = sorted(set(pg.face_vertices(pg.holes[0])))
    sites = hole[:7]
    return preprocess_piece(pg, sites)


@pytest.fixture
def db_path(tmp_path):
    return str(tmp_path / 'planar.db')


def holed_grid(seed=5):
    """7x7 网格：外洞加三个互不相邻的内部方格洞"""
    g = grid(7, max_len=10, seed=seed, directed=True)
    squares = ({8, 9, 15, 16}, {11, 12, 18, 19}, {29, 30, 36, 37})
    inner = [f for f in range(g.face_count) if set(g.face_vertices(f)) in squares]
    return mark_holes(g, list(g.holes) + inner)


@pytest.fixture
def holed_index():
    """四个洞，每个洞上两个站点"""
    pg, _ = prepare(holed_grid(), 5)
    sites = []
    for h in pg.holes:
        sites += sorted(set(pg.face_vertices(h)))[:2]
    return preprocess_piece(pg, sorted(sites))
