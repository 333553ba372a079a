"""
基准测试
对不同规模与 r 指数运行直径计算，汇总成 DataFrame，拟合 log-log 斜率并检查工作量上限
"""
import logging
import math
import time
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Union

import pandas as pd

from ..core.graph import EmbeddedGraph
from ..decomposition.rdivision import MIN_R
from ..diameter.pipeline import diameter
from ..errors import AssertionBreach, BadParams
from ..parser.generators import cylinder, grid, random_triangulation
from ..settings import C_V, Counters, Settings

logger = logging.getLogger(__name__)

EXPONENTS = ('1/2', '3/5', '2/3', '3/4')
PROBE_FACTOR = 64          # 每次三色查询 probes ≤ 64·log²n
TRI_FACTOR = 32            # 每次构造 tri 调用 ≤ 32·|S′|


def _exponent(label: str) -> float:
    num, den = label.split('/')
    return int(num) / int(den)


def r_for(n: int, label: str) -> int:
    return min(max(MIN_R, math.ceil(n ** _exponent(label))), max(n, MIN_R))


def make_graph(kind: str, n: int, seed: int = 0) -> EmbeddedGraph:
    """按生成器名称和目标规模造图"""
    if kind == 'grid':
        side = max(2, round(math.sqrt(n)))
        return grid(side, side)
    elif kind == 'random':
        return random_triangulation(max(3, n), seed=seed, max_len=100)
    elif kind == 'cylinder':
        per_ring = max(3, round(math.sqrt(n)))
        return cylinder(max(2, n // per_ring), per_ring)
    else:
        raise BadParams(f"未知的生成器: {kind}")


def fit_slope(df: pd.DataFrame, x: str = 'n', y: str = 'total') -> float:
    """最小二乘 log-log 斜率"""
    if len(df) < 2:
        raise BadParams("至少需要两个点才能拟合斜率")
    lx = df[x].astype(float).map(math.log)
    ly = df[y].astype(float).map(lambda t: math.log(max(t, 1e-9)))
    return float(lx.cov(ly) / lx.var())


def budget_violations(row: Dict) -> List[str]:
    """
    工作量上限检查

    Returns:
        违反的上限描述，空列表表示全部满足
    """
    problems = []
    n = row['n']
    log2 = max(1.0, math.log2(n)) ** 2
    tri = row['tri_calls']
    queries = row['max_queries']
    boundary = max(1, row['piece_boundary'])
    probe_cap = PROBE_FACTOR * log2 * (tri + queries * (C_V * boundary + 1))
    if row['probes'] > probe_cap:
        problems.append(f"probes {row['probes']} > {probe_cap:.0f}")
    tri_cap = TRI_FACTOR * boundary * row['vd_constructions']
    if tri > tri_cap:
        problems.append(f"tri_calls {tri} > {tri_cap}")
    return problems


class BenchRunner:
    """直径计算基准"""

    def __init__(self, settings: Optional[Settings] = None, kind: str = 'grid',
                 exponents: Sequence[str] = EXPONENTS, check_budgets: bool = True,
                 progress: Optional[Callable[[Dict], None]] = None):
        self.settings = settings or Settings()
        self.kind = kind
        self.exponents = list(exponents)
        self.check_budgets = check_budgets
        self.progress = progress
        self.rows: List[Dict] = []

    def run_one(self, g: EmbeddedGraph, exponent: str) -> Dict:
        r = r_for(g.n, exponent)
        counters = Counters()
        start = time.perf_counter()
        result = diameter(g, r=r, settings=self.settings, counters=counters)
        total = time.perf_counter() - start
        row = {
            'kind': self.kind,
            'n': g.n,
            'exponent': exponent,
            'r': r,
            'pieces': result.pieces,
            'boundary': result.boundary,
            'piece_boundary': result.piece_boundary,
            'value': result.value,
            'total': total,
            **{f't_{k}': v for k, v in result.timings.items()},
            **counters.as_dict(),
        }
        if self.check_budgets:
            problems = budget_violations(row)
            if problems:
                raise AssertionBreach(f"n={g.n} r={r}: " + '; '.join(problems))
        return row

    def run(self, sizes: Sequence[int]) -> pd.DataFrame:
        """
        Args:
            sizes: 目标顶点数列表

        Returns:
            每个 (n, r) 一行的 DataFrame
        """
        for n in sizes:
            g = make_graph(self.kind, n, seed=self.settings.seed)
            for exponent in self.exponents:
                row = self.run_one(g, exponent)
                self.rows.append(row)
                logger.info(f"n={row['n']} r={row['r']} 耗时 {row['total']:.3f}s")
                if self.progress is not None:
                    self.progress(row)
        return self.frame()

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows)

    def slope(self, exponent: str = '2/3') -> float:
        df = self.frame()
        return fit_slope(df[df['exponent'] == exponent])


def export(df: pd.DataFrame, path: Union[str, Path]) -> Path:
    """按后缀导出 CSV 或 XLSX"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if path.suffix == '.csv':
        df.to_csv(path, index=False)
    elif path.suffix == '.xlsx':
        df.to_excel(path, index=False, engine='openpyxl')
    else:
        raise ValueError(f"不支持的文件格式: {path.suffix}")
    return path
