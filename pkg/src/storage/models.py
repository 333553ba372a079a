"""
数据模型
距离表缓存（按图摘要、种子和 r 区分）与运行历史
"""
from datetime import datetime
from pathlib import Path

from sqlalchemy import Column, DateTime, Integer, LargeBinary, String, Text, create_engine
from sqlalchemy.orm import declarative_base, sessionmaker

Base = declarative_base()


class DistanceCacheRecord(Base):
    """边界点距离表缓存"""
    __tablename__ = 'distance_cache'

    id = Column(Integer, primary_key=True, autoincrement=True)
    digest = Column(String(64), nullable=False, index=True)      # 图摘要 (SHA-256)
    seed = Column(Integer, nullable=False)                       # 扰动种子
    r = Column(Integer, nullable=False)
    n = Column(Integer, nullable=False)
    boundary_count = Column(Integer, nullable=False)
    boundary = Column(Text, nullable=False)                      # JSON 边界点列表
    blob = Column(LargeBinary, nullable=False)                   # DistanceTable.to_blob()
    created_at = Column(DateTime, default=datetime.now)

    def __repr__(self):
        return f"<DistanceCache({self.digest[:8]} seed={self.seed} r={self.r} |B|={self.boundary_count})>"


class RunRecord(Base):
    """一次命令运行的结果"""
    __tablename__ = 'run_records'

    id = Column(Integer, primary_key=True, autoincrement=True)
    command = Column(String(20), nullable=False)
    digest = Column(String(64), nullable=False, index=True)
    n = Column(Integer, nullable=False)
    r = Column(Integer, default=0)
    seed = Column(Integer, default=0)
    value = Column(Integer)                                      # 直径（基值）
    witness_u = Column(Integer)
    witness_v = Column(Integer)
    counters = Column(Text, default='{}')                        # JSON
    timings = Column(Text, default='{}')                         # JSON，按情形
    created_at = Column(DateTime, default=datetime.now)

    def __repr__(self):
        return f"<Run({self.command} {self.digest[:8]} n={self.n} value={self.value})>"


def init_database(db_path='history/planar.db'):
    """初始化数据库"""
    # 确保目录存在
    db_file = Path(db_path)
    db_file.parent.mkdir(parents=True, exist_ok=True)

    engine = create_engine(f'sqlite:///{db_path}', echo=False)
    Base.metadata.create_all(engine)

    Session = sessionmaker(bind=engine)

    return engine, Session
