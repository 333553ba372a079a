import pandas as pd
import pytest

from src.analyse import (
    BenchRunner, DiagramPlotter, budget_violations, export, fit_slope, layout, make_graph,
    plot_bench, r_for,
)
from src.core import build_graph
from src.decomposition import MIN_R
from src.errors import BadParams
from src.parser import grid
from src.settings import Settings
from src.voronoi import construct_vd


# ---- 基准 ----

def test_r_for():
    assert 99 <= r_for(10000, '1/2') <= 101
    assert 999 <= r_for(10000, '3/4') <= 1001
    assert r_for(10, '3/4') == MIN_R
    assert r_for(9, '2/3') == MIN_R
    with pytest.raises(ValueError):
        r_for(100, 'half')


def test_make_graph():
    assert make_graph('grid', 49).n == 49
    assert make_graph('random', 40, seed=2).n == 40
    assert len(make_graph('cylinder', 50).holes) == 2
    with pytest.raises(BadParams):
        make_graph('torus', 50)


def test_fit_slope():
    df = pd.DataFrame({'n': [10, 100, 1000], 'total': [1e-4, 1e-2, 1.0]})
    assert fit_slope(df) == pytest.approx(2.0)
    with pytest.raises(BadParams):
        fit_slope(df.head(1))


def _row(**kw):
    row = {'n': 256, 'tri_calls': 10, 'max_queries': 2, 'piece_boundary': 8,
           'probes': 100, 'vd_constructions': 2}
    row.update(kw)
    return row


def test_budget_violations():
    assert budget_violations(_row()) == []
    assert len(budget_violations(_row(probes=10 ** 9))) == 1
    problems = budget_violations(_row(tri_calls=1000, vd_constructions=1))
    assert any(p.startswith('tri_calls') for p in problems)


def test_bench_runner():
    seen = []
    runner = BenchRunner(Settings(threads=1), kind='grid', exponents=['1/2', '2/3'],
                         check_budgets=False, progress=seen.append)
    df = runner.run([36, 64])
    assert len(df) == 4
    assert len(seen) == 4
    assert set(df['exponent']) == {'1/2', '2/3'}
    assert (df['value'] == df['n'].map(lambda n: 2 * (round(n ** 0.5) - 1))).all()
    assert {'total', 'dijkstra', 'probes', 'pieces'} <= set(df.columns)


def test_export(tmp_path):
    df = pd.DataFrame({'n': [16, 25], 'total': [0.1, 0.2]})
    assert pd.read_csv(export(df, tmp_path / 'out' / 'b.csv'))['n'].tolist() == [16, 25]
    assert pd.read_excel(export(df, tmp_path / 'b.xlsx'))['total'].tolist() == [0.1, 0.2]
    with pytest.raises(ValueError):
        export(df, tmp_path / 'b.json')


# ---- 绘图 ----

def test_layout_without_coords():
    data = grid(3).to_dict()
    g = build_graph(data['n'], data['arcs'], data['rotation'], data['holes'])
    pos = layout(g)
    assert sorted(pos) == list(range(9))
    assert layout(grid(3))[4] == (1.0, 1.0)


def test_plot_diagram(tmp_path, grid_index):
    sites = grid_index.sites[:3]
    vd = construct_vd(grid_index, sites, {s: 0 for s in sites})
    plotter = DiagramPlotter()
    out = plotter.plot_diagram(vd, tmp_path / 'vd.svg')
    assert '<svg' in out.read_text(encoding='utf-8')
    assert plotter.plot_diagram(vd, tmp_path / 'vd.png').stat().st_size > 0
    with pytest.raises(ValueError):
        plotter.plot_diagram(vd, tmp_path / 'vd.gif')

    dot = plotter.write_dot(vd, tmp_path / 'vd.dot').read_text(encoding='utf-8')
    assert dot.startswith('digraph G {')
    assert 'color=red' in dot
    assert dot.count(' -> ') == grid_index.graph.m


def test_to_dot_plain():
    g = grid(2)
    dot = DiagramPlotter.to_dot(g)
    assert 'fillcolor' not in dot
    assert 'pos="1.0000,1.0000!"' in dot


def test_plot_bench(tmp_path):
    df = pd.DataFrame({'n': [16, 64, 16, 64], 'exponent': ['1/2', '1/2', '2/3', '2/3'],
                       'total': [0.01, 0.05, 0.02, 0.09]})
    assert plot_bench(df, tmp_path / 'bench.png', slope=1.2).exists()
