"""
数据库管理器 - 负责距离表缓存与运行历史的增删查
"""
import hashlib
import json
import logging
from typing import Dict, List, Optional, Sequence

from ..core.graph import EmbeddedGraph
from ..paths.boundary import DistanceTable
from .models import DistanceCacheRecord, RunRecord, init_database

logger = logging.getLogger(__name__)


def graph_digest(g: EmbeddedGraph) -> str:
    """规范图 JSON 的 SHA-256"""
    payload = json.dumps(g.to_dict(), sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(payload.encode('utf-8')).hexdigest()


class DatabaseManager:
    """缓存与历史管理器"""

    def __init__(self, db_path='history/planar.db'):
        """初始化数据库连接"""
        self.db_path = db_path
        self.engine, self.Session = init_database(db_path)

    def close(self) -> None:
        self.engine.dispose()

    # ---- 距离表缓存 ----
    def save_table(self, digest: str, seed: int, r: int, table: DistanceTable) -> bool:
        """
        保存距离表；同一 (digest, seed, r) 已存在时跳过

        Returns:
            是否写入了新记录
        """
        session = self.Session()
        try:
            existing = session.query(DistanceCacheRecord).filter_by(
                digest=digest, seed=seed, r=r
            ).count()
            if existing > 0:
                logger.debug(f"距离表 {digest[:8]} seed={seed} r={r} 已缓存，跳过保存")
                return False

            session.add(DistanceCacheRecord(
                digest=digest, seed=seed, r=r, n=table.n,
                boundary_count=len(table.boundary),
                boundary=json.dumps(list(table.boundary)),
                blob=table.to_blob(),
            ))
            session.commit()
            print(f"💾 距离表已缓存 ({len(table.boundary)} 个边界点)")
            return True

        except Exception as e:
            session.rollback()
            print(f"✗ 保存距离表失败: {e}")
            raise
        finally:
            session.close()

    def load_table(self, digest: str, seed: int, r: int) -> Optional[DistanceTable]:
        """
        Returns:
            缓存的 DistanceTable；没有缓存时返回 None
        """
        session = self.Session()
        try:
            record = session.query(DistanceCacheRecord).filter_by(
                digest=digest, seed=seed, r=r
            ).order_by(DistanceCacheRecord.id.desc()).first()
            if record is None:
                return None
            boundary = json.loads(record.boundary)
            return DistanceTable.from_blob(record.n, boundary, record.blob)
        finally:
            session.close()

    def clear_cache(self) -> int:
        session = self.Session()
        try:
            count = session.query(DistanceCacheRecord).delete()
            session.commit()
            return count
        except Exception as e:
            session.rollback()
            print(f"✗ 清除缓存失败: {e}")
            raise
        finally:
            session.close()

    # ---- 运行历史 ----
    def save_run(self, command: str, digest: str, n: int, result: Optional[Dict] = None) -> int:
        """
        记录一次运行

        Args:
            command: 命令名
            digest: 图摘要
            n: 顶点数
            result: DiameterResult.to_dict() 或同结构的字典

        Returns:
            新记录 id
        """
        result = result or {}
        witness = result.get('witness') or [None, None]
        session = self.Session()
        try:
            record = RunRecord(
                command=command, digest=digest, n=n,
                r=result.get('r', 0), seed=result.get('seed', 0),
                value=result.get('value'),
                witness_u=witness[0], witness_v=witness[1],
                counters=json.dumps(result.get('counters', {})),
                timings=json.dumps(result.get('timings', {})),
            )
            session.add(record)
            session.commit()
            return record.id

        except Exception as e:
            session.rollback()
            print(f"✗ 保存运行记录失败: {e}")
            raise
        finally:
            session.close()

    def list_runs(self, digest: Optional[str] = None, limit: int = 50) -> List[RunRecord]:
        """最近的运行记录（新的在前）"""
        session = self.Session()
        try:
            query = session.query(RunRecord)
            if digest is not None:
                query = query.filter_by(digest=digest)
            runs = query.order_by(RunRecord.id.desc()).limit(limit).all()

            # 解除session绑定
            for run in runs:
                session.expunge(run)

            return runs
        finally:
            session.close()

    def list_digests(self) -> List[str]:
        """列出所有出现过的图摘要"""
        session = self.Session()
        try:
            digests = session.query(RunRecord.digest).distinct().all()
            return [d[0] for d in digests]
        finally:
            session.close()

    def get_summary(self, digest: str) -> Optional[Dict]:
        """
        获取某个图的运行摘要

        Returns:
            {'runs': xxx, 'n': xxx, 'values': [], 'r_values': [], 'first_run': xxx, 'last_run': xxx,
             'cached_tables': xxx}
        """
        session = self.Session()
        try:
            runs = session.query(RunRecord).filter_by(digest=digest).order_by(RunRecord.id).all()
            if not runs:
                return None
            cached = session.query(DistanceCacheRecord).filter_by(digest=digest).count()

            return {
                'runs': len(runs),
                'n': runs[0].n,
                'values': sorted({r.value for r in runs if r.value is not None}),
                'r_values': sorted({r.r for r in runs}),
                'first_run': runs[0].created_at,
                'last_run': runs[-1].created_at,
                'cached_tables': cached,
            }
        finally:
            session.close()

    def clear_runs(self, digest: Optional[str] = None) -> int:
        """删除运行记录，digest 为 None 时全部删除"""
        session = self.Session()
        try:
            query = session.query(RunRecord)
            if digest is not None:
                query = query.filter_by(digest=digest)
            count = query.delete()
            session.commit()
            return count
        except Exception as e:
            session.rollback()
            print(f"✗ 删除运行记录失败: {e}")
            raise
        finally:
            session.close()


class TableCache:
    """把 DatabaseManager 适配成直径流程使用的缓存接口"""

    def __init__(self, db: DatabaseManager, digest: str):
        self.db = db
        self.digest = digest
        self.hits = 0

    def load_table(self, seed: int, r: int, n: int, boundary: Sequence[int]) -> Optional[DistanceTable]:
        table = self.db.load_table(self.digest, seed, r)
        if table is None:
            return None
        if table.n != n or list(table.boundary) != sorted(set(boundary)):
            logger.warning(f"缓存的距离表与当前划分不一致，忽略 ({self.digest[:8]} seed={seed} r={r})")
            return None
        self.hits += 1
        print(f"📂 使用缓存的距离表 ({len(table.boundary)} 个边界点)")
        return table

    def save_table(self, seed: int, r: int, table: DistanceTable) -> None:
        self.db.save_table(self.digest, seed, r, table)
