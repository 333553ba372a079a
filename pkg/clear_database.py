"""
数据库清理脚本
提供多种清理选项：删除文件、清空距离表缓存、清空运行记录、查看历史
"""
import argparse
import sys
from pathlib import Path

# 添加项目路径
sys.path.insert(0, str(Path(__file__).parent))

from src.settings import load_settings
from src.storage import DatabaseManager


def delete_database_file(db_path: str) -> bool:
    """删除数据库文件（最彻底）"""
    db_file = Path(db_path)
    if db_file.exists():
        db_file.unlink()
        print(f"✓ 已删除数据库文件: {db_path}")
        return True
    else:
        print(f"✗ 数据库文件不存在: {db_path}")
        return False


def clear_cache(db_path: str) -> int:
    """清空距离表缓存但保留表结构"""
    db = DatabaseManager(db_path)
    try:
        count = db.clear_cache()
        print(f"✓ 已清空 {count} 条距离表缓存")
        return count
    finally:
        db.close()


def clear_runs(db_path: str, digest: str = None) -> int:
    """清空运行记录；给出 digest 时只删除该图的记录"""
    db = DatabaseManager(db_path)
    try:
        count = db.clear_runs(digest)
        if digest and count == 0:
            print(f"✗ 找不到图 {digest[:12]} 的运行记录")
        else:
            print(f"✓ 已删除 {count} 条运行记录")
        return count
    finally:
        db.close()


def list_history(db_path: str) -> list:
    """按图列出运行历史"""
    db = DatabaseManager(db_path)
    try:
        digests = db.list_digests()
        if not digests:
            print("✗ 数据库为空，没有运行记录")
            return []

        print(f"\n运行过的图 ({len(digests)} 个):")
        print("-" * 60)
        for i, digest in enumerate(digests, 1):
            summary = db.get_summary(digest)
            print(f"{i}. {digest[:12]}  n={summary['n']}")
            print(f"   - 运行次数: {summary['runs']}")
            print(f"   - 直径: {summary['values']}")
            print(f"   - r: {summary['r_values']}")
            print(f"   - 缓存的距离表: {summary['cached_tables']}")
            print(f"   - 时间跨度: {summary['first_run']} → {summary['last_run']}")
            print()
        return digests
    finally:
        db.close()


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description='📊 数据库清理工具')
    parser.add_argument('--db', help='数据库路径')
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument('--delete-file', action='store_true', help='删除数据库文件')
    group.add_argument('--cache', action='store_true', help='清空距离表缓存')
    group.add_argument('--runs', action='store_true', help='清空运行记录')
    group.add_argument('--list', action='store_true', help='查看运行历史')
    parser.add_argument('--digest', help='只处理该图摘要的记录')
    parser.add_argument('--yes', action='store_true', help='确认执行删除操作')
    args = parser.parse_args(argv)

    db_path = args.db or load_settings().db_path
    print("=" * 60)
    print(f"📊 数据库: {db_path}")
    print("=" * 60)

    db_file = Path(db_path)
    if not db_file.exists():
        print(f"\n✗ 数据库文件不存在: {db_path}")
        print("没有需要清理的数据")
        return 0
    print(f"文件大小: {db_file.stat().st_size / 1024:.2f} KB")

    if args.list:
        list_history(db_path)
        return 0
    if not args.yes:
        print("\n⚠ 警告: 删除操作需要加 --yes 确认")
        return 1
    if args.delete_file:
        delete_database_file(db_path)
    elif args.cache:
        clear_cache(db_path)
    else:
        clear_runs(db_path, args.digest)
    return 0


if __name__ == '__main__':
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\n\n✓ 用户中断")
