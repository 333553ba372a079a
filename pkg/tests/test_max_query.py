import pytest

from src.core import pack
from src.max_query import (
    farthest_all, farthest_in_cell, penetration_audit, preprocess_max, skeleton_incidences,
)
from src.oracles import check_farthest, farthest_oracle, random_instances
from src.paths import dijkstra
from src.voronoi import construct_vd, preprocess_piece

from conftest import path_graph


def test_single_site_is_global_farthest(grid_index):
    s = grid_index.sites[3]
    vd = construct_vd(grid_index, [s], {s: 0})
    res = farthest_in_cell(vd, s)
    dist = dijkstra(grid_index.graph, s).dist
    assert (res.distance, res.vertex) == max((d, p) for p, d in enumerate(dist))


def test_path_end_site():
    g = path_graph([2, 3, 4])
    index = preprocess_piece(g, [0, 3])
    vd = construct_vd(index, [0], {0: 0})
    res = farthest_in_cell(vd, 0)
    assert res.vertex == 3
    assert res.distance == pack(9)


def test_empty_cell_has_no_farthest(grid_index):
    sites = grid_index.sites
    weights = {s: 0 for s in sites}
    weights[sites[2]] = pack(400)
    vd = construct_vd(grid_index, sites, weights)
    assert farthest_in_cell(vd, sites[2]) is None
    results, _ = farthest_all(vd)
    assert sites[2] not in results
    assert set(results) == set(vd.sites)


def test_matches_oracle(grid_index):
    sites = grid_index.sites
    weights = {s: pack((7 * i) % 11) for i, s in enumerate(sites)}
    preprocess_max(grid_index)
    vd = construct_vd(grid_index, sites, weights)
    results, best = farthest_all(vd)
    want = farthest_oracle(grid_index.graph, sites, weights)
    assert {s: (r.distance, r.vertex) for s, r in results.items()} == want
    top = max((weights[s] + d, s, p) for s, (d, p) in want.items())
    assert best == top


def test_cell_boundary_never_entered(grid_index):
    sites = grid_index.sites
    vd = construct_vd(grid_index, sites, {s: pack(i % 3) for i, s in enumerate(sites)})
    for s in vd.sites:
        for entry in penetration_audit(vd, s):
            assert entry['entering_tree_arcs'] == 0
            assert entry['ok']


def test_farthest_against_oracle():
    for kind in ('grid', 'cylinder', 'random'):
        for inst in random_instances(kind, 3, 36, seed=6):
            assert check_farthest(inst) == []


@pytest.mark.slow
def test_farthest_on_multi_hole_pieces():
    for inst in random_instances('cylinder', 8, 240, seed=2, r=60):
        assert check_farthest(inst) == []


def _holed_weights(index, seed):
    return {s: pack((seed * 5 + 3 * i) % 13) for i, s in enumerate(index.sites)}


def test_farthest_on_four_holes(holed_index):
    g = holed_index.graph
    for seed in range(3):
        weights = _holed_weights(holed_index, seed)
        vd = construct_vd(holed_index, holed_index.sites, weights)
        results, _ = farthest_all(vd)
        want = farthest_oracle(g, holed_index.sites, weights)
        assert {s: (r.distance, r.vertex) for s, r in results.items()} == want


def test_skeleton_crossings_bounded(holed_index):
    limit = 4 * len(holed_index.graph.holes)
    for seed in range(3):
        vd = construct_vd(holed_index, holed_index.sites, _holed_weights(holed_index, seed))
        for s in vd.sites:
            found = [inc for cycle in skeleton_incidences(vd, s) for inc in cycle]
            assert len(found) <= limit
            for inc in found:
                assert holed_index.graph.left[inc.arc] == inc.face
                assert holed_index.graph.right(inc.arc) == inc.inner


def test_audit_counts_skeleton_crossings(holed_index):
    vd = construct_vd(holed_index, holed_index.sites, _holed_weights(holed_index, 1))
    for s in vd.sites:
        report = penetration_audit(vd, s)
        cycles = skeleton_incidences(vd, s)
        assert len(report) == len(cycles)
        for entry, found in zip(report, cycles):
            assert entry['ok']
            assert entry['penetrating'] + entry['exiting'] == len(found)


def test_query_counted(grid_index):
    s = grid_index.sites[0]
    vd = construct_vd(grid_index, grid_index.sites[:3], {x: 0 for x in grid_index.sites[:3]})
    before = grid_index.counters.max_queries
    farthest_in_cell(vd, s)
    assert grid_index.counters.max_queries == before + 1
