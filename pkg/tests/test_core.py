import math
import random

import pytest

from src.core import (
    RangeMax, build_graph, compute_dual, cotree, graph_from_edges, is_triangulated,
    level_ancestor_search, preorder_arc_labels, triangulate, base_of, NO_LABEL,
)
from src.errors import DisconnectedGraph, EmptyRange, MissingReverse, NotPlanarEmbedding
from src.paths import dijkstra

from conftest import path_graph, triangle_graph


# ---- 嵌入图 ----

def test_triangle_faces(triangle):
    assert triangle.face_count == 2
    assert triangle.n - triangle.edge_count + triangle.face_count == 2
    assert len(triangle.holes) == 1


def test_grid_faces(grid3):
    assert grid3.face_count == 5
    quads = [f for f in range(grid3.face_count) if not grid3.is_hole(f)]
    assert len(quads) == 4
    assert all(len(grid3.face_arcs[f]) == 4 for f in quads)


def test_face_walk_closes(small_random):
    g = small_random
    for e in range(g.m):
        a = e
        for _ in range(len(g.face_arcs[g.left[e]])):
            a = g.face_next(a)
        assert a == e


def test_k5_rejected():
    coords = [(math.cos(2 * math.pi * i / 5), math.sin(2 * math.pi * i / 5)) for i in range(5)]
    edges = [(u, v, 1, 1) for u in range(5) for v in range(u + 1, 5)]
    with pytest.raises(NotPlanarEmbedding):
        graph_from_edges(5, edges, coords)


def test_missing_reverse():
    arcs = [{'id': 0, 'tail': 0, 'head': 1, 'rev': 1, 'len': 1},
            {'id': 1, 'tail': 1, 'head': 0, 'rev': None, 'len': 1}]
    with pytest.raises(MissingReverse):
        build_graph(2, arcs, [[0], [1]])


def test_disconnected_rejected():
    coords = [(0.0, 0.0), (1.0, 0.0), (5.0, 0.0), (6.0, 0.0)]
    with pytest.raises(DisconnectedGraph):
        graph_from_edges(4, [(0, 1, 1, 1), (2, 3, 1, 1)], coords)


def test_json_round_trip(small_random):
    data = small_random.to_dict()
    g = build_graph(data['n'], data['arcs'], data['rotation'], data['holes'], data.get('coords'))
    assert g.holes == small_random.holes
    assert g.base == small_random.base
    assert g.face_count == small_random.face_count


# ---- 三角化 ----

def test_triangulate_keeps_triangle(triangle):
    assert triangulate(triangle) is triangle


def test_triangulate_grid(grid3):
    tg = triangulate(grid3)
    assert tg.edge_count == grid3.edge_count + 4
    assert is_triangulated(tg)
    assert tg.holes == grid3.holes
    assert tg.base[:grid3.m] == grid3.base


def test_triangulate_keeps_distances(ring):
    tg = triangulate(ring)
    for s in (0, 5, 11):
        before = dijkstra(ring, s).dist
        after = dijkstra(tg, s).dist
        assert [base_of(x) for x in before] == [base_of(x) for x in after[:ring.n]]


# ---- 对偶图 ----

def test_triangle_dual(triangle):
    dual = compute_dual(triangle)
    assert dual.vertex_count == 2
    assert all(dual.degree(f) == 3 for f in range(2))


def test_triangulated_dual_degrees(grid3):
    tg = triangulate(grid3)
    dual = compute_dual(tg)
    assert all(dual.degree(f) == 3 for f in range(tg.face_count) if not tg.is_hole(f))


def test_vertex_cut_is_dual_cycle(grid3):
    tg = triangulate(grid3)
    dual = compute_dual(tg)
    assert dual.is_cycle(tg.rotation[4])


# ---- 区间最大值 ----

def test_rmq_single():
    assert RangeMax([5]).query(0, 0) == (0, 5)


def test_rmq_increasing():
    values = list(range(17))
    assert RangeMax(values).query(0, 16) == (16, 16)


def test_rmq_matches_scan():
    rng = random.Random(1)
    values = [rng.randint(0, 50) for _ in range(1000)]
    rmq = RangeMax(values)
    for _ in range(1000):
        lo = rng.randrange(1000)
        hi = rng.randrange(lo, 1000)
        best = max(values[lo:hi + 1])
        assert rmq.query(lo, hi) == (values.index(best, lo, hi + 1), best)


def test_rmq_empty_range():
    with pytest.raises(EmptyRange):
        RangeMax([1, 2, 3]).query(2, 1)


# ---- 前序标号 ----

def test_preorder_path():
    g = path_graph([1, 1])
    labels = preorder_arc_labels(dijkstra(g, 0))
    assert labels[g.find_arc(0, 1)] < labels[g.find_arc(1, 2)]
    assert sorted(labels) == list(range(1, g.m + 1))


def test_preorder_star():
    coords = [(0.0, 0.0)] + [(math.cos(a), math.sin(a)) for a in (0.0, 2.1, 4.2)]
    g = graph_from_edges(4, [(0, i, 1, 1) for i in (1, 2, 3)], coords)
    labels = preorder_arc_labels(dijkstra(g, 0))
    order = [labels[e] for e in g.rotation[0]]
    assert order == sorted(order)


def test_preorder_brackets_subtrees(small_random):
    t = dijkstra(small_random, 0)
    g = small_random
    labels = preorder_arc_labels(t)
    for v in range(1, g.n):
        down = t.parent_arc[v]
        inner = [labels[e] for e in g.rotation[v] if e != g.rev[down]]
        assert all(labels[down] < x < labels[g.rev[down]] for x in inner)


# ---- 层祖先 ----

def test_level_ancestor_on_path():
    g = path_graph([1] * 29)
    t = dijkstra(g, 0)
    assert t.lifting.ancestor(29, 5) == 24
    assert level_ancestor_search(t, 29, lambda x: True) == 0
    assert level_ancestor_search(t, 29, lambda x: x == 29) == 29
    assert level_ancestor_search(t, 29, lambda x: False) is None
    for k in range(30):
        assert level_ancestor_search(t, 29, lambda x: x >= k) == k


def test_level_ancestor_matches_scan(small_random):
    t = dijkstra(small_random, 0)
    rng = random.Random(5)
    for v in range(small_random.n):
        path = [0] + [small_random.head[a] for a in t.path_to(v)]
        threshold = t.dist[path[rng.randrange(len(path))]]
        pred = lambda x: t.dist[x] >= threshold
        assert level_ancestor_search(t, v, pred) == next(x for x in path if pred(x))


# ---- 余树 ----

def test_cotree_counts(small_random):
    g = small_random
    t = dijkstra(g, 0)
    ct = cotree(g, t, g.holes[0])
    assert ct.edge_count == g.edge_count - (g.n - 1)
    assert sum(1 for f in range(g.face_count) if ct.parent[f] >= 0) == ct.edge_count


def test_cotree_root_max(small_random):
    g = small_random
    t = dijkstra(g, 3)
    ct = cotree(g, t, g.holes[0])
    assert ct.subtree_max[ct.root] == max((t.dist[v], v) for v in range(g.n))


def test_cotree_single_edge(triangle):
    t = dijkstra(triangle, 0)
    ct = cotree(triangle, t, triangle.holes[0])
    assert ct.edge_count == 1


def test_cotree_skeleton_exclusion(ring):
    t = dijkstra(ring, 0)
    top, other = ring.holes
    ct = cotree(ring, t, top)
    assert ct.in_skeleton[other]
    assert ct.subtree_exclusion_max(top, []) == ct.subtree_max[top]
    want = max(ct.face_label[f] for f in range(ring.face_count)
               if ct.is_ancestor(top, f) and not ct.is_ancestor(other, f))
    assert ct.subtree_exclusion_max(top, [other]) == want


def test_cotree_hole_fans(ring):
    t = dijkstra(ring, 2)
    ct = cotree(ring, t, ring.holes[0])
    for h in ring.holes:
        arcs = ring.face_arcs[h]
        values = [ct.subtree_max[ring.right(a)]
                  if ct.parent_edge[ring.right(a)] == a and not ct.in_skeleton[ring.right(a)] else NO_LABEL
                  for a in arcs]
        L = len(arcs)
        assert ct.hole_fan_max(h, 0, L - 1) == max(values)
        assert ct.hole_fan_max(h, L - 1, 1) == max(values[-1], values[0], values[1])
