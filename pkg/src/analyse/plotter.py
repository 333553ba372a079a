"""
可视化模块
绘制 Voronoi 单元、平分线与洞，以及基准测试的 log-log 曲线
"""
import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
import networkx as nx
import pandas as pd
from matplotlib.patches import Polygon

from ..core.graph import EmbeddedGraph
from ..voronoi.diagram import VoronoiDiagram

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
FORMATS = ('.svg', '.png')


def layout(g: EmbeddedGraph) -> Dict[int, Tuple[float, float]]:
    """有坐标时直接使用，否则用 networkx 平面布局（非平面时退回固定种子的弹簧布局）"""
    if g.coords is not None:
        return {v: tuple(g.coords[v]) for v in range(g.n)}
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from((g.tail[e], g.head[e]) for e in g.edges())
    try:
        pos = nx.planar_layout(G)
    except nx.NetworkXException:
        logger.warning("planar_layout 失败，改用 spring_layout")
        pos = nx.spring_layout(G, seed=0)
    return {v: (float(p[0]), float(p[1])) for v, p in pos.items()}


def _save(fig, path: PathLike) -> Path:
    path = Path(path)
    if path.suffix not in FORMATS:
        plt.close(fig)
        raise ValueError(f"不支持的图片格式: {path.suffix}")
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format=path.suffix[1:], bbox_inches='tight')
    plt.close(fig)
    return path


class DiagramPlotter:
    """Voronoi 图绘图器"""

    def __init__(self, figsize: Tuple[float, float] = (10, 10)):
        # 中文字体，缺失时回退到默认字体
        matplotlib.rcParams['font.sans-serif'] = ['SimHei', 'Microsoft YaHei', 'DejaVu Sans']
        matplotlib.rcParams['axes.unicode_minus'] = False
        self.figsize = figsize

    def _face_center(self, g: EmbeddedGraph, pos, f: int) -> Tuple[float, float]:
        pts = [pos[v] for v in g.face_vertices(f)]
        return sum(p[0] for p in pts) / len(pts), sum(p[1] for p in pts) / len(pts)

    def draw(self, g: EmbeddedGraph, owner: Optional[Sequence[int]] = None,
             bisector_arcs: Sequence[int] = (), sites: Sequence[int] = (), title: str = ''):
        """
        画出图、按单元着色的顶点、平分线（对偶弧，连接两侧面的中心）

        Returns:
            matplotlib Figure
        """
        pos = layout(g)
        fig, ax = plt.subplots(figsize=self.figsize)

        for f in g.holes:
            pts = [pos[v] for v in g.face_vertices(f)]
            if len(pts) >= 3:
                ax.add_patch(Polygon(pts, closed=True, facecolor='#DDDDDD', edgecolor='none',
                                     alpha=0.5, zorder=0))

        for e in g.edges():
            (x1, y1), (x2, y2) = pos[g.tail[e]], pos[g.head[e]]
            ax.plot([x1, x2], [y1, y2], color='#999999', linewidth=0.8, zorder=1)

        if owner is not None:
            palette = plt.cm.tab20
            site_ids = sorted(set(owner))
            color_of = {s: palette(i % 20) for i, s in enumerate(site_ids)}
            ax.scatter([pos[v][0] for v in range(g.n)], [pos[v][1] for v in range(g.n)],
                       c=[color_of[owner[v]] for v in range(g.n)], s=30, zorder=3)
        else:
            ax.scatter([pos[v][0] for v in range(g.n)], [pos[v][1] for v in range(g.n)],
                       color='#2E86AB', s=20, zorder=3)

        if sites:
            ax.scatter([pos[s][0] for s in sites], [pos[s][1] for s in sites], marker='*',
                       s=200, color='black', zorder=4, label='站点')
            for s in sites:
                ax.annotate(str(s), pos[s], textcoords='offset points', xytext=(4, 4), fontsize=8)

        for a in bisector_arcs:
            lf, rf = g.left[a], g.right(a)
            mid = ((pos[g.tail[a]][0] + pos[g.head[a]][0]) / 2, (pos[g.tail[a]][1] + pos[g.head[a]][1]) / 2)
            ends = [mid if g.is_hole(f) else self._face_center(g, pos, f) for f in (lf, rf)]
            ax.plot([ends[0][0], ends[1][0]], [ends[0][1], ends[1][1]], color='red',
                    linewidth=2, zorder=2)

        ax.set_aspect('equal')
        ax.axis('off')
        if title:
            ax.set_title(title, fontsize=13)
        if sites:
            ax.legend(loc='upper right', fontsize=9)
        return fig

    def plot_diagram(self, vd: VoronoiDiagram, path: PathLike, title: str = '') -> Path:
        """按后缀写出 SVG 或 PNG"""
        fig = self.draw(vd.graph, vd.assignment(), sorted(vd.boundary_arcs()), vd.sites,
                        title or f'Voronoi 图 ({len(vd.sites)} 个站点)')
        out = _save(fig, path)
        print(f"💾 图像已保存: {out}")
        return out

    @staticmethod
    def to_dot(g: EmbeddedGraph, owner: Optional[Sequence[int]] = None,
               bisector_arcs: Sequence[int] = ()) -> str:
        """DOT 文本：顶点按单元分色，平分线弧标红"""
        cut = set(bisector_arcs)
        lines = ['digraph G {', '  node [shape=circle, style=filled, fontsize=10];']
        for v in range(g.n):
            attrs = [f'label="{v}"']
            if owner is not None:
                attrs.append(f'colorscheme=set312, fillcolor={owner[v] % 12 + 1}')
            if g.coords is not None:
                x, y = g.coords[v]
                attrs.append(f'pos="{x:.4f},{y:.4f}!"')
            lines.append(f'  {v} [{", ".join(attrs)}];')
        for e in range(g.m):
            style = ', color=red, penwidth=2' if e in cut else ''
            lines.append(f'  {g.tail[e]} -> {g.head[e]} [label="{g.base[e]}"{style}];')
        lines.append('}')
        return '\n'.join(lines) + '\n'

    def write_dot(self, vd: VoronoiDiagram, path: PathLike) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_dot(vd.graph, vd.assignment(), sorted(vd.boundary_arcs())), encoding='utf-8')
        print(f"💾 DOT 已保存: {path}")
        return path


def plot_bench(df: pd.DataFrame, path: PathLike, slope: Optional[float] = None) -> Path:
    """
    log-log 坐标下的总耗时与 n，每个 r 指数一条曲线

    Args:
        df: BenchRunner 产生的表（列 n, exponent, total）
        slope: 拟合斜率，写在标题中
    """
    fig, ax = plt.subplots(figsize=(10, 6))
    for exponent, part in df.groupby('exponent'):
        part = part.sort_values('n')
        ax.plot(part['n'], part['total'], marker='o', linewidth=2, label=f'r = n^{exponent}')
    ax.set_xscale('log')
    ax.set_yscale('log')
    ax.set_xlabel('n', fontsize=12, fontweight='bold')
    ax.set_ylabel('耗时 (s)', fontsize=12, fontweight='bold')
    title = '📊 直径计算耗时'
    if slope is not None:
        title += f'（斜率 {slope:.3f}）'
    ax.set_title(title, fontsize=13)
    ax.grid(True, alpha=0.3, linestyle='--')
    ax.legend(loc='upper left', fontsize=10)
    return _save(fig, path)
