"""分析层初始化"""
from .plotter import DiagramPlotter, layout, plot_bench
from .bench import BenchRunner, budget_violations, export, fit_slope, make_graph, r_for

__all__ = [
    'DiagramPlotter', 'layout', 'plot_bench',
    'BenchRunner', 'budget_violations', 'export', 'fit_slope', 'make_graph', 'r_for',
]
