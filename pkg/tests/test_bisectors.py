import random

import pytest

from src.bisectors import family as family_module
from src.bisectors import (
    argmin_holedepth, hole_incidences, kth_arc, persistent, precompute_delta, range_max, search_by_pre,
    version_at,
)
from src.core import pack
from src.diameter import prepare
from src.errors import IndexOutOfRange, NonContiguousUpdate, SiteNotOnHole
from src.oracles import check_bisectors, random_instances
from src.parser import grid
from src.paths import dijkstra
from src.settings import Counters
from src.voronoi import preprocess_piece

from conftest import path_graph


# ---- 持久化平衡树 ----

def _tree(keys):
    root = None
    for k in keys:
        root = persistent.insert(root, k, f"e{k}", (k, -k))
    return root


def test_persistent_versions_survive():
    rng = random.Random(3)
    keys = rng.sample(range(1000), 200)
    roots = [None]
    for k in keys:
        roots.append(persistent.insert(roots[-1], k, k, (k,)))
    for i, root in enumerate(roots):
        assert [n.key for n in persistent.iterate(root)] == sorted(keys[:i])
    root = roots[-1]
    for k in keys[:100]:
        root = persistent.delete(root, k)
    assert persistent.size(root) == 100
    assert persistent.size(roots[-1]) == 200
    assert persistent.is_balanced(root)
    assert persistent.is_balanced(roots[-1])


def test_persistent_kth_and_rank():
    root = _tree([5, 1, 9, 3, 7])
    assert [persistent.kth(root, i).key for i in range(5)] == [1, 3, 5, 7, 9]
    assert persistent.rank(root, 6) == 3
    assert persistent.rank(root, 0) == 0
    with pytest.raises(IndexOutOfRange):
        persistent.kth(root, 5)


def test_persistent_range_max_matches_scan():
    rng = random.Random(9)
    items = sorted({rng.randrange(10_000) for _ in range(300)})
    decs = [(rng.randint(0, 40), rng.randint(-5, 5)) for _ in items]
    root = persistent.build([(k, k, d) for k, d in zip(items, decs)])
    for _ in range(200):
        lo = rng.randrange(len(items))
        hi = rng.randrange(lo, len(items))
        best = max(d[0] for d in decs[lo:hi + 1])
        first = next(i for i in range(lo, hi + 1) if decs[i][0] == best)
        assert persistent.range_max(root, lo, hi, 0) == (first, best)
        want = [i for i in range(lo, hi + 1) if decs[i][1] > 0]
        assert persistent.range_collect(root, lo, hi, 1) == want


def test_persistent_find_last():
    root = persistent.build([(i, i, (i % 4,)) for i in range(20)])
    pos = persistent.find_last(root, 0, 19, lambda h, l: h[0] >= 3, lambda d: d[0] == 3)
    assert pos == 19
    assert persistent.find_first(root, 4, 10, lambda h, l: h[0] >= 3, lambda d: d[0] == 3) == 7


def test_persistent_queries_count_node_visits():
    root = persistent.build([(i, i, (i % 97,)) for i in range(1024)])
    counters = Counters()
    assert persistent.find_first(root, 0, 1023, lambda h, l: h[0] >= 96, lambda d: d[0] == 96, counters) == 96
    first = counters.probes
    assert 1 < first <= 4 * 11
    persistent.range_agg(root, 3, 1000, counters)
    assert 1 < counters.probes - first <= 6 * 11
    persistent.kth(root, 700, counters)
    assert counters.probes > first


# ---- δ 表 ----

@pytest.fixture
def grid_table():
    pg, _ = prepare(grid(5, max_len=6, seed=2, directed=True), 2)
    sites = [0, 2, 4, 14, 24]
    return pg, precompute_delta(pg, sites)


def test_delta_matches_dijkstra(grid_table):
    pg, table = grid_table
    for s in table.sites:
        assert table.site(s).dist == dijkstra(pg, s).dist
    assert table.delta(0, 24, 0) == -table.d(24, 0)
    assert table.row(2, 4)[7] == table.d(2, 7) - table.d(4, 7)


def test_delta_owner_alive(grid_table):
    _, table = grid_table
    weights = {s: 0 for s in table.sites}
    assert table.alive(weights, table.sites) == table.sites
    weights[2] = pack(1000)
    assert 2 not in table.alive(weights, table.sites)


def test_site_off_hole_rejected():
    pg, _ = prepare(grid(3), 0)
    with pytest.raises(SiteNotOnHole):
        precompute_delta(pg, [0, 4])


# ---- 平分线族 ----

@pytest.fixture
def path_family():
    g = path_graph([1, 1])
    return g, preprocess_piece(g, [0, 2]).store.get(0, 2)


def test_path_family_versions(path_family):
    g, fam = path_family
    assert fam.version_count == 4
    assert version_at(fam, pack(1)).arcs() == [g.find_arc(1, 2)]
    assert version_at(fam, pack(-1)).arcs() == [g.find_arc(0, 1)]
    assert version_at(fam, 0).arcs() == [g.find_arc(1, 2)]


def test_path_family_extremes(path_family):
    _, fam = path_family
    assert version_at(fam, pack(100)).arcs() == []
    assert version_at(fam, pack(-100)).arcs() == []
    assert version_at(fam, pack(100)).index == fam.version_count - 1
    assert version_at(fam, pack(-100)).index == 0


def test_path_hole_incidences(path_family):
    g, fam = path_family
    version = version_at(fam, pack(1))
    assert hole_incidences(version, g.holes[0]) == version.arcs()


def test_version_queries(grid_index):
    fam = grid_index.store.get(grid_index.sites[0], grid_index.sites[3])
    version = max((fam.version(i) for i in range(fam.version_count)), key=len)
    arcs = version.arcs()
    assert kth_arc(version, 0) == arcs[0]
    for i, a in enumerate(arcs):
        assert search_by_pre(version, fam.u, fam.pre_u[a]) == i
        assert version.position_of(a) == i
    for j in range(fam.layout.width):
        pos, best = range_max(version, 0, len(arcs) - 1, j)
        decs = [version.dec(i)[j] for i in range(len(arcs))]
        assert best == max(decs)
        assert pos == decs.index(best)


def test_versions_nest(grid_index):
    fam = grid_index.store.get(grid_index.sites[1], grid_index.sites[5])
    g = grid_index.graph
    sides = [{p for p in range(g.n) if fam.in_u(i)(p)} for i in range(fam.version_count)]
    assert all(a < b for a, b in zip(sides, sides[1:]))
    assert len(sides[-1]) == g.n


def test_versions_share_nodes(grid_index):
    fam = grid_index.store.get(grid_index.sites[0], grid_index.sites[6])
    sizes = [len(fam.version(i)) for i in range(fam.version_count)]
    assert max(sizes) <= fam.node_count() <= sum(sizes)


def test_families_match_oracle():
    for kind in ('grid', 'cylinder'):
        for inst in random_instances(kind, 3, 30, seed=4):
            assert check_bisectors(inst) == []


@pytest.mark.slow
def test_families_match_oracle_on_pieces():
    for inst in random_instances('random', 6, 150, seed=1, r=40):
        assert check_bisectors(inst, max_pairs=10) == []


def test_argmin_holedepth_matches_scan(holed_index):
    g = holed_index.graph
    sites = holed_index.sites
    for a, b in ((sites[0], sites[3]), (sites[2], sites[7]), (sites[1], sites[5])):
        fam = holed_index.store.get(a, b)
        version = max((fam.version(i) for i in range(fam.version_count)), key=len)
        faces = [g.left[version.arc(i)] for i in range(len(version))]
        for site in (fam.u, fam.v):
            cot = holed_index.table.site(site).cotree
            for h in g.holes:
                depth = cot.hole_depth[g.hole_index[h]]
                pos = argmin_holedepth(version, site, h)
                assert depth[faces[pos]] == min(depth[f] for f in faces)


def test_cyclic_breaks():
    assert family_module._cyclic_breaks([], 6) == 0
    assert family_module._cyclic_breaks([2, 3, 4], 6) == 1
    assert family_module._cyclic_breaks([5, 0, 1], 6) == 1
    assert family_module._cyclic_breaks([0, 2], 6) == 2


def test_noncontiguous_update_always_raises(monkeypatch):
    g = path_graph([1, 1])
    table = precompute_delta(g, [0, 2])
    monkeypatch.setattr(family_module, '_cyclic_breaks', lambda positions, L: 2)
    with pytest.raises(NonContiguousUpdate):
        family_module.build_family(g, 0, 2, table)


def test_decoration_width_ignores_site_count(grid_index):
    g = grid_index.graph
    few = preprocess_piece(g, grid_index.sites[:3])
    fam_many = grid_index.store.get(grid_index.sites[0], grid_index.sites[2])
    fam_few = few.store.get(grid_index.sites[0], grid_index.sites[2])
    for fam in (fam_many, fam_few):
        version = max((fam.version(i) for i in range(fam.version_count)), key=len)
        assert len(version.dec(0)) == fam.layout.width == 9 + 3 * len(g.holes)
