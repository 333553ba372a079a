import json

import pandas as pd
import pytest

import clear_database
from main import main


@pytest.fixture
def graph_file(tmp_path):
    path = tmp_path / 'grid.json'
    assert main(['generate', 'grid', '--k', '4', '--out', str(path), '--quiet']) == 0
    return str(path)


def _run_json(capsys, argv):
    capsys.readouterr()
    assert main(argv + ['--json', '--quiet']) == 0
    return json.loads(capsys.readouterr().out)


def test_generate_to_stdout(capsys):
    data = _run_json(capsys, ['generate', 'cylinder', '--rings', '2', '--per-ring', '4'])
    assert data['n'] == 8
    assert len(data['holes']) == 2


def test_diameter_verify(capsys, graph_file, db_path, tmp_path):
    report_path = tmp_path / 'report.json'
    data = _run_json(capsys, ['diameter', '--input', graph_file, '--verify', '--db', db_path,
                              '--report', str(report_path)])
    assert data['value'] == 6
    assert data['verified']
    assert json.loads(report_path.read_text(encoding='utf-8'))['value'] == 6

    assert main(['diameter', '--input', graph_file, '--db', db_path, '--cache', '--quiet']) == 0
    assert main(['diameter', '--input', graph_file, '--db', db_path, '--cache', '--quiet']) == 0


def test_exit_codes(tmp_path, db_path):
    assert main(['diameter', '--input', str(tmp_path / 'absent.json'), '--db', db_path]) == 2
    assert main(['diameter']) == 1
    assert main(['teleport']) == 1
    assert main(['generate', 'grid', '--k', '1', '--l', '1', '--out', str(tmp_path / 'g.json')]) == 2


def test_rdiv(capsys, graph_file):
    data = _run_json(capsys, ['rdiv', '--input', graph_file, '--r', '16'])
    assert data['r'] == 16
    assert sum(p['vertices'] for p in data['pieces']) >= 16
    assert 'audit' in data


def test_bisector(capsys, graph_file):
    data = _run_json(capsys, ['bisector', '--input', graph_file, '--pair', '3,0', '--all-criticals'])
    assert data['pair'] == [3, 0]
    assert data['criticals'] == sorted(data['criticals'])
    assert data['versions'] == len(data['criticals']) + 1

    data = _run_json(capsys, ['bisector', '--input', graph_file, '--pair', '0,3', '--delta', '0'])
    assert 0 <= data['version'] < data['versions']
    assert data['arcs']

    assert main(['bisector', '--input', graph_file, '--pair', '0,3', '--quiet']) == 2
    assert main(['bisector', '--input', graph_file, '--pair', '0', '--delta', '1', '--quiet']) == 2


def test_voronoi(capsys, graph_file, tmp_path):
    out = tmp_path / 'vd.json'
    data = _run_json(capsys, ['voronoi', '--input', graph_file, '--farthest', '--out', str(out)])
    assert json.loads(out.read_text(encoding='utf-8')) == data
    assert sum(len(c) for c in data['cells'].values()) == 16
    assert set(data['farthest']) == set(data['cells'])
    assert data['farthest_max']['value'] >= max(f['distance'] for f in data['farthest'].values())

    weights = tmp_path / 'w.json'
    weights.write_text(json.dumps({'sites': [0, 15], 'weights': {'0': 0, '15': 2}}), encoding='utf-8')
    data = _run_json(capsys, ['voronoi', '--input', graph_file, '--weights', str(weights)])
    assert data['weights'] == {'0': 0, '15': 2}
    assert len(data['cells']['0']) > len(data['cells']['15'])


def test_render(graph_file, tmp_path):
    dot = tmp_path / 'vd.dot'
    assert main(['render', '--input', graph_file, '--out', str(dot), '--quiet']) == 0
    assert dot.read_text(encoding='utf-8').startswith('digraph')
    svg = tmp_path / 'vd.svg'
    assert main(['render', '--input', graph_file, '--out', str(svg), '--format', 'svg', '--quiet']) == 0
    assert svg.exists()
    assert main(['render', '--input', graph_file, '--quiet']) == 1


def test_verify(graph_file):
    assert main(['verify', 'vd', '--kinds', 'grid', '--count', '2', '--n', '25', '--quiet']) == 0
    assert main(['verify', 'diameter', '--input', graph_file, '--quiet']) == 0
    assert main(['verify', 'vd', '--input', graph_file, '--quiet']) == 2


def test_bench(tmp_path):
    out = tmp_path / 'bench.csv'
    plot = tmp_path / 'bench.png'
    argv = ['bench', '--sizes', '36,64', '--exponents', '1/2', '--no-budgets',
            '--out', str(out), '--plot', str(plot), '--threads', '1', '--quiet']
    assert main(argv) == 0
    df = pd.read_csv(out)
    assert df['n'].tolist() == [36, 64]
    assert plot.exists()


def test_clear_database(graph_file, db_path, tmp_path):
    assert clear_database.main(['--db', str(tmp_path / 'none.db'), '--list']) == 0
    assert main(['diameter', '--input', graph_file, '--db', db_path, '--quiet']) == 0
    assert clear_database.main(['--db', db_path, '--list']) == 0
    assert clear_database.main(['--db', db_path, '--runs']) == 1
    assert clear_database.main(['--db', db_path, '--runs', '--yes']) == 0
    assert clear_database.main(['--db', db_path, '--delete-file', '--yes']) == 0
    assert not (tmp_path / 'planar.db').exists()
