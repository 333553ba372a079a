"""存储层初始化"""
from .models import Base, DistanceCacheRecord, RunRecord, init_database
from .db_manager import DatabaseManager, TableCache, graph_digest

__all__ = [
    'Base', 'DistanceCacheRecord', 'RunRecord', 'init_database',
    'DatabaseManager', 'TableCache', 'graph_digest',
]
