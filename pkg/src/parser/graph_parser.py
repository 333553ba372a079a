"""
图文件读写
支持 .json（完整嵌入）、.xlsx 和 .csv（弧表 + 坐标，按极角生成旋转序）
"""
import json
import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd

from ..core.graph import EmbeddedGraph, build_graph, graph_from_edges
from ..errors import BadParams, WeightsMissing
from ..settings import H_MAX

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

# 弧表列名（支持中英文）
TAIL_COLUMNS = ('tail', '起点')
HEAD_COLUMNS = ('head', '终点')
LEN_COLUMNS = ('len', 'length', '长度')
REV_LEN_COLUMNS = ('rev_len', '反向长度')


def _read_table(path: Path, sheet: Optional[str] = None) -> pd.DataFrame:
    if path.suffix == '.xlsx':
        return pd.read_excel(path, sheet_name=sheet or 0)
    elif path.suffix == '.csv':
        return pd.read_csv(path)
    else:
        raise ValueError(f"不支持的文件格式: {path.suffix}")


def _column(df: pd.DataFrame, names: Sequence[str], required: bool = True) -> Optional[str]:
    lowered = {str(c).strip().lower(): c for c in df.columns}
    for name in names:
        if name in lowered:
            return lowered[name]
    if required:
        raise BadParams(f"弧表缺少列 {names[0]}，现有列: {list(df.columns)}")
    return None


def load_graph(path: PathLike, h_max: int = H_MAX) -> EmbeddedGraph:
    """
    读取图文件

    Args:
        path: .json 图文件，或 .csv / .xlsx 弧表

    Returns:
        EmbeddedGraph
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"图文件不存在: {path}")
    if path.suffix in ('.csv', '.xlsx'):
        return load_arc_table(path, h_max=h_max)
    if path.suffix != '.json':
        raise ValueError(f"不支持的文件格式: {path.suffix}")

    with open(path, 'r', encoding='utf-8') as f:
        data = json.load(f)
    for key in ('n', 'arcs', 'rotation'):
        if key not in data:
            raise BadParams(f"图 JSON 缺少字段: {key}")
    g = build_graph(int(data['n']), data['arcs'], data['rotation'], data.get('holes', []),
                    data.get('coords'), h_max=h_max)
    logger.debug(f"读取 {path}: {g!r}")
    return g


def save_graph(g: EmbeddedGraph, path: PathLike) -> Path:
    """写出图 JSON（键顺序固定，同一图总是得到相同字节）"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(g.to_dict(), f, ensure_ascii=False, indent=1)
        f.write('\n')
    return path


def _coords_path(path: Path) -> Path:
    return path.with_name(f"{path.stem}_coords{path.suffix}")


def load_arc_table(path: PathLike, coords_path: Optional[PathLike] = None,
                   h_max: int = H_MAX) -> EmbeddedGraph:
    """
    读取弧表并按坐标生成直线嵌入，外面设为洞

    弧表列: tail, head, len[, rev_len]（缺少 rev_len 时视为无向边）
    坐标表列: vertex, x, y；xlsx 可放在名为 coords 的工作表中，
    否则读取同目录下的 <stem>_coords.<suffix>

    Returns:
        EmbeddedGraph
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"弧表文件不存在: {path}")
    df = _read_table(path)

    if coords_path is not None:
        cdf = _read_table(Path(coords_path))
    elif path.suffix == '.xlsx' and 'coords' in pd.ExcelFile(path).sheet_names:
        cdf = _read_table(path, sheet='coords')
    elif _coords_path(path).exists():
        cdf = _read_table(_coords_path(path))
    else:
        raise FileNotFoundError(f"找不到坐标表: {_coords_path(path)}")

    tail_col = _column(df, TAIL_COLUMNS)
    head_col = _column(df, HEAD_COLUMNS)
    len_col = _column(df, LEN_COLUMNS)
    rev_col = _column(df, REV_LEN_COLUMNS, required=False)

    edges: List[Tuple[int, int, int, int]] = []
    for _, row in df.iterrows():
        if pd.isna(row[tail_col]) or pd.isna(row[head_col]):
            continue
        length = int(row[len_col])
        rev_len = length if rev_col is None or pd.isna(row[rev_col]) else int(row[rev_col])
        edges.append((int(row[tail_col]), int(row[head_col]), length, rev_len))

    vcol = _column(cdf, ('vertex', 'id', '顶点'))
    coords_by_vertex: Dict[int, Tuple[float, float]] = {
        int(row[vcol]): (float(row['x']), float(row['y'])) for _, row in cdf.iterrows()
    }
    n = max([max(u, v) for u, v, _, _ in edges] + list(coords_by_vertex), default=-1) + 1
    missing = [v for v in range(n) if v not in coords_by_vertex]
    if missing:
        raise BadParams(f"顶点缺少坐标: {missing[:10]}")
    coords = [coords_by_vertex[v] for v in range(n)]
    g = graph_from_edges(n, edges, coords, hole_faces='outer', h_max=h_max)
    logger.debug(f"读取弧表 {path}: {len(edges)} 条边, {g!r}")
    return g


def load_weights(path: PathLike, sites: Optional[Sequence[int]] = None) -> Tuple[List[int], Dict[int, int]]:
    """
    读取站点权重 {"sites": [...], "weights": {site: int}}

    Args:
        sites: 覆盖文件中的站点列表

    Returns:
        (站点列表, 权重字典)

    Raises:
        WeightsMissing: 某个站点没有权重
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"权重文件不存在: {path}")
    with open(path, 'r', encoding='utf-8') as f:
        data = json.load(f)
    weights = {int(k): int(v) for k, v in data.get('weights', {}).items()}
    chosen = [int(s) for s in (sites if sites is not None else data.get('sites', sorted(weights)))]
    absent = [s for s in chosen if s not in weights]
    if absent:
        raise WeightsMissing(f"站点缺少权重: {absent}")
    return chosen, {s: weights[s] for s in chosen}
