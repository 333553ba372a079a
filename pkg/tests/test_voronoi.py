import random

import pytest

from src.core import pack
from src.errors import AssertionBreach, SiteNotPreprocessed, WeightsMissing
from src.oracles import bisector_oracle, check_vd, random_instances, tri_oracle, vd_oracle
from src.settings import C_V
from src.voronoi import (
    brute_merge, cell_boundary, construct_vd, cyclic_runs, expected_cover, intersect_cyclic, merge_diagrams,
    preprocess_piece, trichromatic_vertices, vd_single_hole, vd_two_holes,
)


def _weights(sites, seed, spread=15):
    rng = random.Random(seed)
    return {s: pack(rng.randint(0, spread)) for s in sites}


def test_single_site(grid_index):
    s = grid_index.sites[2]
    vd = construct_vd(grid_index, [s], {s: 0})
    assert vd.edge_count() == 0
    assert vd.assignment() == [s] * grid_index.graph.n
    assert list(cell_boundary(vd, s)) == []


def test_two_sites_follow_bisector(grid_index):
    g = grid_index.graph
    u, v = grid_index.sites[0], grid_index.sites[4]
    weights = {u: pack(3), v: 0}
    vd = construct_vd(grid_index, [u, v], weights)
    cut = bisector_oracle(g, u, v, weights[v] - weights[u])
    assert vd.boundary_arcs() == cut | {g.rev[e] for e in cut}
    assert set(cell_boundary(vd, u)) == cut


def test_seven_sites_on_one_hole(grid_index):
    g = grid_index.graph
    for seed in range(5):
        weights = _weights(grid_index.sites, seed)
        vd = construct_vd(grid_index, grid_index.sites, weights)
        owner = vd_oracle(g, grid_index.sites, weights)
        assert vd.assignment() == owner
        assert len(vd.vertices()) <= C_V * len(grid_index.sites)
        for s in vd.sites:
            want = {e for e in range(g.m) if owner[g.tail[e]] == s and owner[g.head[e]] != s}
            assert set(cell_boundary(vd, s)) == want


def test_empty_cell_recorded(grid_index):
    sites = grid_index.sites
    weights = {s: 0 for s in sites}
    weights[sites[1]] = pack(400)
    vd = construct_vd(grid_index, sites, weights)
    assert sites[1] in vd.dead
    assert sites[1] not in vd.assignment()
    assert cell_boundary(vd, sites[1]) is None


def test_missing_weight(grid_index):
    sites = grid_index.sites[:3]
    with pytest.raises(WeightsMissing):
        construct_vd(grid_index, sites, {sites[0]: 0, sites[1]: 0})


def test_unknown_site(grid_index):
    with pytest.raises(SiteNotPreprocessed):
        construct_vd(grid_index, [grid_index.sites[0], 12], {grid_index.sites[0]: 0, 12: 0})


def test_to_dict(grid_index):
    sites = grid_index.sites[:4]
    vd = construct_vd(grid_index, sites, {s: pack(i) for i, s in enumerate(sites)})
    data = vd.to_dict()
    assert data['weights'] == {str(s): i for i, s in enumerate(sites)}
    assert sum(len(c) for c in data['cells'].values()) == grid_index.graph.n
    assert len(data['edges']) == vd.edge_count()


def test_expected_cover():
    assert expected_cover(4, True) == 3
    assert expected_cover(4, False) == 2
    assert expected_cover(6, True) == 10


def test_vd_matches_oracle():
    for kind in ('grid', 'cylinder'):
        for inst in random_instances(kind, 4, 40, seed=3):
            assert check_vd(inst) == []


@pytest.mark.slow
def test_vd_matches_oracle_on_pieces():
    for kind in ('grid', 'random', 'cylinder'):
        for inst in random_instances(kind, 10, 300, seed=8, r=60):
            assert check_vd(inst) == []


def test_strict_index_matches_oracle(grid_index):
    g = grid_index.graph
    strict = preprocess_piece(g, grid_index.sites, strict=True)
    for seed in range(3):
        weights = _weights(strict.sites, seed + 20)
        vd = construct_vd(strict, strict.sites, weights)
        assert vd.assignment() == vd_oracle(g, strict.sites, weights)


# ---- 合并 ----

def test_merge_traces_with_trichromatic_search(grid_index):
    counters = grid_index.counters
    for seed in range(3):
        weights = _weights(grid_index.sites, seed + 40)
        calls = counters.tri_calls
        construct_vd(grid_index, grid_index.sites, weights)
        used = counters.tri_calls - calls
        assert 0 < used <= 32 * len(grid_index.sites)
    assert counters.fallbacks == 0


def test_merge_matches_brute_merge(grid_index):
    sites = grid_index.hole_groups(grid_index.sites)[grid_index.graph.holes[0]]
    weights = _weights(sites, 7)
    left = vd_single_hole(grid_index, sites[:3], weights)
    right = vd_single_hole(grid_index, sites[3:], weights)
    merged = merge_diagrams(left, right)
    assert merged.assignment() == brute_merge(left, right).assignment()
    assert sorted(merged.sites) == sorted(brute_merge(left, right).sites)


def test_dcel_built_without_fallback(grid_index):
    weights = _weights(grid_index.sites, 11)
    vd = construct_vd(grid_index, grid_index.sites, weights)
    dcel = vd.dcel()
    assert dcel.fallbacks == 0
    assert all(h.next >= 0 for h in dcel.halfedges)
    for s in vd.sites:
        assert len(dcel.cycles.get(s, [])) >= 1


def test_vertex_bound_enforced(grid_index):
    g = grid_index.graph
    tight = preprocess_piece(g, grid_index.sites, c_v=0)
    u, v = grid_index.sites[0], grid_index.sites[4]
    with pytest.raises(AssertionBreach):
        construct_vd(tight, [u, v], {u: 0, v: 0})


# ---- 多洞 ----

def test_three_holes_match_oracle(holed_index):
    g = holed_index.graph
    groups = holed_index.hole_groups(holed_index.sites)
    sites = [s for h in g.holes[:3] for s in groups[h]]
    for seed in range(3):
        weights = _weights(sites, seed + 50)
        vd = construct_vd(holed_index, sites, weights)
        assert vd.assignment() == vd_oracle(g, sites, weights)


def test_trichromatic_vertices_are_oracle_faces(holed_index):
    g = holed_index.graph
    groups = holed_index.hole_groups(holed_index.sites)
    trio = [groups[h] for h in g.holes[:3]]
    weights = _weights(holed_index.sites, 3)
    singles = [vd_single_hole(holed_index, grp, weights) for grp in trio]
    vd12 = vd_two_holes(holed_index, singles[0], singles[1])
    vd13 = vd_two_holes(holed_index, singles[0], singles[2])
    corners = trichromatic_vertices(holed_index, vd12, vd13, [set(grp) for grp in trio], weights)
    want = {f for f in tri_oracle(g, trio, weights) if not g.is_hole(f)}
    assert set(corners) == want
    assert len(corners) <= 2 * len(holed_index.sites)


def test_four_holes_assemble(holed_index):
    g = holed_index.graph
    assert len(g.holes) == 4
    weights = _weights(holed_index.sites, 9)
    vd = construct_vd(holed_index, holed_index.sites, weights)
    assert vd.assignment() == vd_oracle(g, holed_index.sites, weights)
    assert len(vd.vertices()) <= C_V * len(holed_index.sites)


# ---- 环上区间 ----

def test_cyclic_runs_join_wraparound():
    assert cyclic_runs([True, False, True, True]) == [(2, 3)]
    assert cyclic_runs([False, True, False]) == [(1, 1)]
    assert cyclic_runs([True] * 3) == [(0, 3)]
    assert cyclic_runs([False] * 3) == []


def test_intersect_cyclic():
    assert intersect_cyclic([(6, 4)], [(0, 3)], 8) == [(0, 2)]
    assert intersect_cyclic([(6, 4)], [(7, 5)], 8) == [(7, 3)]
    assert intersect_cyclic([(0, 8)], [(3, 2)], 8) == [(3, 2)]
    assert intersect_cyclic([(0, 2)], [(4, 2)], 8) == []
