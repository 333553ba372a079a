import pytest

from src.diameter import diameter, prepare
from src.parser import grid, random_triangulation
from src.paths import boundary_distances
from src.settings import Settings
from src.storage import DatabaseManager, TableCache, graph_digest


@pytest.fixture
def db(db_path):
    manager = DatabaseManager(db_path)
    yield manager
    manager.close()


def _table(seed=5):
    pg, _ = prepare(grid(4, max_len=7, seed=seed, directed=True), seed)
    return pg, boundary_distances(pg, [0, 5, 15])


def test_digest_stable():
    a = graph_digest(grid(4, max_len=7, seed=2))
    assert a == graph_digest(grid(4, max_len=7, seed=2))
    assert a != graph_digest(grid(4, max_len=7, seed=3))
    assert len(a) == 64


def test_table_round_trip(db):
    pg, table = _table()
    assert db.save_table('abc', 5, 16, table)
    assert not db.save_table('abc', 5, 16, table)
    loaded = db.load_table('abc', 5, 16)
    assert loaded.boundary == table.boundary
    for b in table.boundary:
        assert loaded.from_boundary[b] == table.from_boundary[b]
        assert loaded.to_boundary[b] == table.to_boundary[b]
    assert db.load_table('abc', 6, 16) is None
    assert db.clear_cache() == 1
    assert db.load_table('abc', 5, 16) is None


def test_table_cache_checks_boundary(db):
    pg, table = _table()
    cache = TableCache(db, 'abc')
    cache.save_table(5, 16, table)
    assert cache.load_table(5, 16, pg.n, [15, 0, 5]) is not None
    assert cache.load_table(5, 16, pg.n, [0, 5]) is None
    assert cache.load_table(5, 16, pg.n + 1, [0, 5, 15]) is None
    assert cache.hits == 1


def test_diameter_with_cache(db):
    g = random_triangulation(60, seed=3, max_len=40, directed=True)
    cache = TableCache(db, graph_digest(g))
    settings = Settings(threads=1)
    first = diameter(g, r=20, settings=settings, cache=cache)
    assert cache.hits == 0
    second = diameter(g, r=20, settings=settings, cache=cache)
    assert cache.hits == 1
    assert (first.value, first.witness) == (second.value, second.witness)


def test_runs(db):
    g = grid(3)
    digest = graph_digest(g)
    result = diameter(g).to_dict()
    first = db.save_run('diameter', digest, g.n, result)
    second = db.save_run('verify', digest, g.n)
    db.save_run('diameter', 'other', 4, {'value': 7, 'r': 16, 'witness': [0, 3]})
    assert second > first

    runs = db.list_runs(digest)
    assert [run.id for run in runs] == [second, first]
    assert runs[1].value == 4
    assert runs[0].value is None
    assert set(db.list_digests()) == {digest, 'other'}

    summary = db.get_summary(digest)
    assert summary['runs'] == 2
    assert summary['values'] == [4]
    assert summary['cached_tables'] == 0
    assert db.get_summary('missing') is None

    assert db.clear_runs('other') == 1
    assert db.list_digests() == [digest]
    assert db.clear_runs() == 2
    assert db.list_runs() == []
