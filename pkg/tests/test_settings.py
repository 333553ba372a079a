import json

import pytest

from src.errors import BadParams, InputError, InvariantBreach, NegativeCycle, TieDetected
from src.settings import H_MAX, Counters, Settings, load_settings


def test_update_skips_none():
    s = Settings(seed=1).update(seed=None, threads=3)
    assert (s.seed, s.threads) == (1, 3)
    with pytest.raises(BadParams):
        s.update(colour='red')


def test_load_defaults(monkeypatch):
    monkeypatch.delenv('PLANARVD_THREADS', raising=False)
    monkeypatch.delenv('PLANARVD_DB', raising=False)
    s = load_settings()
    assert s.h_max == H_MAX
    assert s.threads >= 1


def test_load_file_and_env(tmp_path, monkeypatch):
    path = tmp_path / 'cfg.json'
    path.write_text(json.dumps({'seed': 9, 'c_b': 4, 'threads': 2}), encoding='utf-8')
    monkeypatch.setenv('PLANARVD_THREADS', '5')
    monkeypatch.setenv('PLANARVD_DB', str(tmp_path / 'x.db'))
    s = load_settings(str(path))
    assert (s.seed, s.c_b, s.threads) == (9, 4, 5)
    assert s.db_path == str(tmp_path / 'x.db')


def test_load_errors(tmp_path, monkeypatch):
    with pytest.raises(FileNotFoundError):
        load_settings(str(tmp_path / 'absent.json'))
    monkeypatch.setenv('PLANARVD_THREADS', 'many')
    with pytest.raises(BadParams):
        load_settings()
    monkeypatch.delenv('PLANARVD_THREADS')
    path = tmp_path / 'cfg.json'
    path.write_text(json.dumps({'h_max': 0}), encoding='utf-8')
    with pytest.raises(BadParams):
        load_settings(str(path))


def test_counters_merge():
    a = Counters(dijkstra=2, probes=5)
    a.merge(Counters(dijkstra=1, tri_calls=4))
    assert a.as_dict()['dijkstra'] == 3
    assert a.as_dict()['tri_calls'] == 4
    assert a.probes == 5


def test_error_kinds():
    assert issubclass(NegativeCycle, InputError)
    assert issubclass(TieDetected, InvariantBreach)
    assert NegativeCycle("x").exit_code == 2
    assert TieDetected("x").exit_code == 3


def test_counters_merge_site_scans():
    a = Counters(site_scans=2, fallbacks=1)
    a.merge(Counters(site_scans=3))
    assert a.site_scans == 5
    assert a.as_dict()['fallbacks'] == 1
