import math

import pytest

from src.core import base_of, pack, graph_from_edges
from src.errors import NegativeArc, NegativeCycle, BadParams
from src.oracles import apsp_oracle
from src.parser import grid, random_triangulation
from src.paths import (
    DistanceTable, QuadHeap, boundary_distances, dijkstra, perturb, price_function, reduce_lengths,
    format_length, to_base, tiebreak_of,
)

from conftest import path_graph


# ---- Dijkstra ----

def test_path_distance():
    g = path_graph([1, 2], back=[5, 5])
    t = dijkstra(g, 0)
    assert t.dist[2] == pack(3)
    assert t.path_to(2) == [g.find_arc(0, 1), g.find_arc(1, 2)]


def test_seeded_run():
    g = path_graph([1, 2], back=[5, 5])
    t = dijkstra(g, initial={1: 0})
    assert t.dist[1] == 0
    assert t.parent_arc[1] == -1
    assert base_of(t.dist[0]) == 5
    assert base_of(t.dist[2]) == 2


def test_grid_corner_distance():
    g = grid(3)
    t = dijkstra(g, 0)
    assert base_of(t.dist[8]) == 4


def test_negative_arc_rejected():
    g = path_graph([1, -1], back=[1, 1])
    with pytest.raises(NegativeArc):
        dijkstra(g, 0)


def test_no_seeds_reaches_nothing():
    g = path_graph([1, 1])
    t = dijkstra(g, initial={})
    assert t.dist == [math.inf] * 3
    assert not t.spans()


def test_tree_arcs_tight():
    g = perturb(random_triangulation(40, seed=2, max_len=50, directed=True), 2)
    t = dijkstra(g, 0)
    for v in range(1, g.n):
        a = t.parent_arc[v]
        assert t.dist[v] == t.dist[g.tail[a]] + g.length[a]


# ---- 扰动 ----

def test_perturb_keeps_base():
    g = random_triangulation(20, seed=4, max_len=30)
    pg = perturb(g, 99)
    assert pg.base == g.base
    assert any(pg.tiebreak)
    assert perturb(g, 99).tiebreak == pg.tiebreak


def test_perturb_breaks_equal_paths():
    g = grid(2)
    pg = perturb(g, 1)
    t = dijkstra(pg, 0)
    left = t.dist[1] + pg.length[pg.find_arc(1, 3)]
    right = t.dist[2] + pg.length[pg.find_arc(2, 3)]
    assert base_of(left) == base_of(right) == 2
    assert left != right


def test_perturbed_distances_match_plain():
    for seed in range(20):
        g = random_triangulation(25, seed=seed, max_len=10, directed=True)
        pg = perturb(g, seed)
        plain = dijkstra(g, 0).dist
        exact = dijkstra(pg, 0).dist
        assert [base_of(x) for x in exact] == [base_of(x) for x in plain]


def test_no_distance_ties_after_perturb():
    g = perturb(grid(4, max_len=3, seed=8), 8)
    values = [d for row in apsp_oracle(g) for d in row if d != 0]
    assert len(values) == len(set(values))


def test_length_helpers():
    x = pack(7, 12345)
    assert base_of(x) == 7
    assert tiebreak_of(x) == 12345
    assert format_length(x) == '7'
    assert format_length(math.inf) == '∞'
    assert to_base(math.inf) is None


# ---- 势函数 ----

def test_price_zero_on_nonnegative(small_random):
    assert price_function(small_random) == [0] * small_random.n


def test_price_negative_arc():
    g = path_graph([2, -3, 4], back=[5, 5, 5])
    phi = price_function(g)
    red = reduce_lengths(g, phi)
    assert all(b >= 0 for b in red.base)
    t = dijkstra(red, 0)
    assert base_of(t.dist[3]) - phi[0] + phi[3] == 3


def test_price_negative_cycle():
    g = path_graph([1], back=[-2])
    with pytest.raises(NegativeCycle):
        price_function(g)


# ---- 边界距离表 ----

def test_boundary_single_row(triangle):
    table = boundary_distances(triangle, [1])
    assert table.boundary == [1]
    assert base_of(table.d(1, 0)) == 1
    assert base_of(table.d(2, 1)) == 1


def test_boundary_symmetric_on_undirected():
    g = grid(4)
    table = boundary_distances(g, [0, 5, 15])
    for b in table.boundary:
        assert table.from_boundary[b] == table.to_boundary[b]


def test_boundary_matches_apsp():
    g = perturb(random_triangulation(30, seed=6, max_len=20, directed=True), 6)
    dist = apsp_oracle(g)
    table = boundary_distances(g, [0, 4, 9], threads=2)
    for b in table.boundary:
        assert table.from_boundary[b] == dist[b]
        assert table.to_boundary[b] == [dist[v][b] for v in range(g.n)]


def test_table_blob_round_trip():
    g = perturb(random_triangulation(12, seed=3, max_len=9, directed=True), 3)
    table = boundary_distances(g, [1, 2])
    back = DistanceTable.from_blob(g.n, [2, 1], table.to_blob())
    assert back.from_boundary == table.from_boundary
    assert back.to_boundary == table.to_boundary


def test_table_blob_length_checked():
    g = grid(2)
    table = boundary_distances(g, [0])
    with pytest.raises(BadParams):
        DistanceTable.from_blob(g.n, [0, 1], table.to_blob())


def test_table_rejects_interior_pair():
    g = grid(3)
    table = boundary_distances(g, [0])
    with pytest.raises(KeyError):
        table.d(4, 5)


def test_quad_heap_pops_in_order():
    values = [(7 * i) % 23 for i in range(40)]
    heap = QuadHeap([(v, i) for i, v in enumerate(values[:10])])
    for i, v in enumerate(values[10:], start=10):
        heap.push((v, i))
    popped = [heap.pop() for _ in range(len(heap))]
    assert popped == sorted((v, i) for i, v in enumerate(values))
    assert not heap


def test_quad_heap_children_not_smaller():
    heap = QuadHeap([(x,) for x in (9, 4, 8, 1, 7, 3, 6, 2, 5, 0)])
    items = heap.items
    for i in range(1, len(items)):
        assert items[(i - 1) // 4] <= items[i]
    assert heap.peek() == (0,)
