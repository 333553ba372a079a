"""
运行配置
默认值 <- JSON 配置文件 <- 环境变量 <- 命令行参数
"""
import json
import os
from dataclasses import dataclass, field, fields, asdict
from pathlib import Path
from typing import Dict, Optional

from .errors import BadParams

H_MAX = 6            # 每个 piece 的洞数上限
C_B = 8              # 边界点常数
C_P = 16             # piece 数常数
C_V = 6              # Voronoi 顶点数常数
DEFAULT_SEED = 20240611
DB_PATH = 'history/planar.db'


@dataclass
class Counters:
    """工作量计数器"""
    dijkstra: int = 0
    vd_constructions: int = 0
    tri_calls: int = 0
    probes: int = 0
    fallbacks: int = 0
    max_queries: int = 0
    site_scans: int = 0       # 合并时逐站点比较的次数

    def merge(self, other: 'Counters') -> None:
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))

    def as_dict(self) -> Dict[str, int]:
        return asdict(self)


@dataclass
class Settings:
    h_max: int = H_MAX
    c_b: int = C_B
    c_p: int = C_P
    c_v: int = C_V
    seed: int = DEFAULT_SEED
    strict: bool = False
    threads: int = field(default_factory=lambda: os.cpu_count() or 1)
    db_path: str = DB_PATH
    cache: bool = False
    max_retries: int = 3

    def update(self, **overrides) -> 'Settings':
        """用非 None 的值覆盖当前配置"""
        known = {f.name for f in fields(self)}
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in known:
                raise BadParams(f"未知配置项: {key}")
            setattr(self, key, value)
        return self


def load_settings(path: Optional[str] = None) -> Settings:
    """
    读取配置

    Args:
        path: 可选的 JSON 配置文件

    Returns:
        Settings 实例
    """
    settings = Settings()
    if path:
        config_file = Path(path)
        if not config_file.exists():
            raise FileNotFoundError(f"配置文件不存在: {path}")
        with open(config_file, 'r', encoding='utf-8') as f:
            settings.update(**json.load(f))

    threads = os.environ.get('PLANARVD_THREADS')
    if threads:
        try:
            settings.threads = max(1, int(threads))
        except ValueError:
            raise BadParams(f"PLANARVD_THREADS 不是整数: {threads}")
    db = os.environ.get('PLANARVD_DB')
    if db:
        settings.db_path = db

    if settings.h_max < 1:
        raise BadParams("h_max 必须 >= 1")
    return settings
