"""
主程序 - 命令行入口
平面图加权 Voronoi 图与精确直径计算
"""
import argparse
import contextlib
import json
import logging
import sys
import time
from pathlib import Path

# 添加项目路径
sys.path.insert(0, str(Path(__file__).parent))

from src.analyse import BenchRunner, DiagramPlotter, export, plot_bench
from src.bisectors import version_at
from src.core import base_of, pack
from src.decomposition import r_division
from src.diameter import default_r, diameter, prepare
from src.errors import AssertionBreach, BadParams, PlanarError
from src.max_query import farthest_all
from src.oracles import ORACLE_LIMIT, KINDS, apsp_oracle, check_diameter, run_audit
from src.parser import cylinder, grid, load_graph, load_weights, random_triangulation, save_graph
from src.settings import Counters, load_settings
from src.storage import DatabaseManager, TableCache, graph_digest
from src.voronoi import construct_vd, preprocess_piece


# ========== 全局配置 ==========
DB_PATH = 'history/planar.db'
REPORT_DIR = 'history'

EXIT_USAGE = 1
EXIT_INPUT = 2


class CliParser(argparse.ArgumentParser):
    """用法错误统一以退出码 1 结束"""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"✗ 参数错误: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


class Console:
    """面向人的输出；--json 时机器输出独占 stdout"""

    def __init__(self, quiet: bool = False, json_mode: bool = False):
        self.quiet = quiet
        self.json_mode = json_mode
        self.out = sys.stdout

    def banner(self, title: str) -> None:
        if self.quiet:
            return
        print("\n" + "=" * 80)
        print(title)
        print("=" * 80)

    def info(self, message: str) -> None:
        if not self.quiet:
            print(message)

    def emit(self, data) -> None:
        """机器输出（JSON）"""
        self.out.write(json.dumps(data, ensure_ascii=False, indent=1, default=str) + '\n')
        self.out.flush()


def _parse_pair(text: str):
    try:
        u, v = (int(x) for x in text.split(','))
    except ValueError:
        raise BadParams(f"--pair 应为 u,v: {text}")
    return u, v


def _parse_list(text: str, cast=int):
    return [cast(x) for x in text.split(',') if x.strip()]


def _write_json(data, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(data, f, ensure_ascii=False, indent=1, default=str)
    return path


def _load(args, console: Console):
    g = load_graph(args.input, h_max=args.settings.h_max)
    console.info(f"📂 已读取 {args.input}: n={g.n}, 边={g.edge_count}, 洞={len(g.holes)}")
    return g


# ========== generate ==========
def cmd_generate(args, console: Console) -> int:
    console.banner(f"🔧 生成图: {args.kind}")
    if args.kind == 'grid':
        g = grid(args.k, args.l, max_len=args.max_len, seed=args.settings.seed, directed=args.directed)
    elif args.kind == 'random-triangulation':
        g = random_triangulation(args.n, seed=args.settings.seed, max_len=args.max_len,
                                 directed=args.directed)
    else:
        g = cylinder(args.rings, args.per_ring, max_len=args.max_len, seed=args.settings.seed,
                     directed=args.directed)

    if args.out:
        path = save_graph(g, args.out)
        console.info(f"💾 已保存: {path} (n={g.n}, 洞={len(g.holes)})")
    else:
        console.emit(g.to_dict())
    return 0


# ========== diameter ==========
def cmd_diameter(args, console: Console) -> int:
    settings = args.settings
    console.banner("📂 步骤 1: 读取图")
    g = _load(args, console)

    db = None
    cache = None
    if args.cache or settings.cache:
        db = DatabaseManager(settings.db_path)
        cache = TableCache(db, graph_digest(g))

    console.banner("⚙ 步骤 2: 计算直径")
    counters = Counters()
    start = time.perf_counter()
    result = diameter(g, r=args.r, settings=settings, counters=counters, cache=cache)
    elapsed = time.perf_counter() - start
    console.info(f"✓ 直径 = {result.value}，见证点对 {result.witness[0]} -> {result.witness[1]}")
    console.info(f"   r={result.r}, {result.pieces} 块, {result.boundary} 个边界点, 用时 {elapsed:.3f}s")

    report = result.to_dict()
    if args.verify:
        console.banner("🔍 步骤 3: 暴力校验")
        if g.n > ORACLE_LIMIT:
            raise BadParams(f"--verify 只接受 n ≤ {ORACLE_LIMIT}")
        want = base_of(max(max(row) for row in apsp_oracle(g)))
        if want != result.value:
            raise AssertionBreach(f"直径 {result.value} 与暴力结果 {want} 不一致")
        console.info(f"✓ 与全源 Dijkstra 结果一致 ({want})")
        report['verified'] = True

    console.banner("📊 工作量")
    for key, value in counters.as_dict().items():
        console.info(f"   {key}: {value}")
    for key, value in result.timings.items():
        console.info(f"   t_{key}: {value:.3f}s")

    if db is None:
        db = DatabaseManager(settings.db_path)
    db.save_run('diameter', graph_digest(g), g.n, report)
    db.close()

    if args.report:
        console.info(f"💾 报告已保存: {_write_json(report, args.report)}")
    if console.json_mode:
        console.emit(report)
    return 0


# ========== voronoi / render ==========
def _build_diagram(args, console: Console):
    settings = args.settings
    g = _load(args, console)
    pg, phi = prepare(g, settings.seed)
    if args.piece is not None:
        rdiv = r_division(pg, args.r or default_r(pg.n), h_max=settings.h_max, c_b=settings.c_b,
                          strict=settings.strict)
        if not 0 <= args.piece < len(rdiv.pieces):
            raise BadParams(f"piece 编号越界: {args.piece}（共 {len(rdiv.pieces)} 块）")
        piece = rdiv.pieces[args.piece]
        to_local = piece.local_ids
        global_ids = piece.global_ids
    else:
        piece = pg
        to_local = {v: v for v in range(pg.n)}
        global_ids = list(range(pg.n))

    if args.weights:
        sites, weights = load_weights(args.weights)
    else:
        sites = [global_ids[v] for v in getattr(piece, 'boundary', [])] or \
            sorted({v for h in pg.holes for v in pg.face_vertices(h)})
        weights = {s: 0 for s in sites}
    missing = [s for s in sites if s not in to_local]
    if missing:
        raise BadParams(f"站点不在所选 piece 中: {missing}")
    local_sites = [to_local[s] for s in sites]
    local_weights = {to_local[s]: pack(w) for s, w in weights.items() if s in to_local}

    local_phi = [phi[v] for v in global_ids]
    index = preprocess_piece(piece, local_sites, phi=local_phi, strict=settings.strict)
    vd = construct_vd(index, local_sites, local_weights)
    console.info(f"✓ Voronoi 图: {len(vd.sites)} 个非空单元，{vd.edge_count()} 条边，"
                 f"{len(vd.vertices())} 个顶点，{len(vd.dead)} 个空单元")
    return vd, index, global_ids


def cmd_voronoi(args, console: Console) -> int:
    console.banner("🗺 构造加权 Voronoi 图")
    if args.trace:
        logging.getLogger('src.trichromatic').setLevel(logging.DEBUG)
    vd, index, global_ids = _build_diagram(args, console)

    data = vd.to_dict()
    data['global_ids'] = global_ids
    if args.farthest:
        results, best = farthest_all(vd)
        data['farthest'] = {str(s): {'vertex': r.vertex, 'distance': base_of(r.distance)}
                            for s, r in results.items()}
        if best is not None:
            value, s, p = best
            phi_s = index.phi[s] if index.phi is not None else 0
            data['farthest_max'] = {'site': s, 'vertex': p,
                                    'value': base_of(value - pack(phi_s))}
            console.info(f"📊 最大 ω(s)+d(s,p) = {data['farthest_max']['value']} (站点 {s}, 顶点 {p})")
    if args.trace:
        data['counters'] = index.counters.as_dict()
        console.info(f"📊 计数: {index.counters.as_dict()}")

    if args.render:
        _render(vd, args.render, None)
    if args.out:
        console.info(f"💾 已保存: {_write_json(data, args.out)}")
    if console.json_mode or not args.out:
        console.emit(data)
    return 0


def _render(vd, out, fmt) -> Path:
    plotter = DiagramPlotter()
    path = Path(out)
    if fmt == 'dot' or path.suffix == '.dot':
        return plotter.write_dot(vd, path)
    return plotter.plot_diagram(vd, path)


def cmd_render(args, console: Console) -> int:
    console.banner("🎨 绘制 Voronoi 图")
    vd, _, _ = _build_diagram(args, console)
    _render(vd, args.out, args.format)
    return 0


# ========== bisector ==========
def cmd_bisector(args, console: Console) -> int:
    console.banner("✂ 平分线版本")
    u, v = _parse_pair(args.pair)
    g = _load(args, console)
    pg, _ = prepare(g, args.settings.seed)
    index = preprocess_piece(pg, [u, v], strict=args.settings.strict)
    fam = index.store.get(u, v)
    swapped = fam.u != u

    data = {'pair': [u, v], 'versions': fam.version_count}
    if args.all_criticals:
        crit = [-c for c in reversed(fam.criticals)] if swapped else list(fam.criticals)
        crit = [base_of(c) for c in crit]
        data['criticals'] = crit
    else:
        if args.delta is None:
            raise BadParams("需要 --delta 或 --all-criticals")
        version = version_at(fam, pack(-args.delta if swapped else args.delta))
        arcs = [pg.rev[a] for a in version.arcs()] if swapped else version.arcs()
        data.update({
            'delta': args.delta,
            'version': version.index,
            'arcs': [{'id': a, 'tail': pg.tail[a], 'head': pg.head[a]} for a in arcs],
        })
        console.info(f"✓ δ={args.delta}: 版本 {version.index}，{len(arcs)} 条弧")
    console.emit(data)
    return 0


# ========== rdiv ==========
def cmd_rdiv(args, console: Console) -> int:
    settings = args.settings
    console.banner("🧩 r-division")
    g = _load(args, console)
    pg, _ = prepare(g, settings.seed)
    r = args.r or default_r(pg.n)
    rdiv = r_division(pg, r, h_max=settings.h_max, c_b=settings.c_b, strict=settings.strict)
    data = {
        'r': r,
        'pieces': [{'index': p.index, 'vertices': p.n, 'boundary': len(p.boundary), 'holes': len(p.holes)}
                   for p in rdiv.pieces],
        'audit': rdiv.audit(settings.c_b, settings.c_p, settings.h_max),
    }
    console.info(f"✓ {len(rdiv.pieces)} 块，{len(rdiv.boundary)} 个边界点")
    console.emit(data)
    return 0


# ========== verify ==========
def cmd_verify(args, console: Console) -> int:
    console.banner(f"🔍 对照检查: {args.what}")
    if args.input:
        if args.what != 'diameter':
            raise BadParams("--input 只用于 verify diameter")
        g = _load(args, console)
        problems = check_diameter(g, args.settings, args.r)
        checked = 1
    else:
        kinds = args.kinds.split(',') if args.kinds else list(KINDS)
        report = run_audit(args.what, kinds=kinds, count=args.count, n=args.n, seed=args.settings.seed,
                           r=args.r, settings=args.settings)
        problems, checked = report.failures, report.checked

    for line in problems[:20]:
        print(f"✗ {line}")
    if problems:
        raise AssertionBreach(f"{len(problems)} 处不一致（{checked} 个实例）")
    console.info(f"✓ {checked} 个实例全部一致")
    return 0


# ========== bench ==========
def cmd_bench(args, console: Console) -> int:
    console.banner("⏱ 基准测试")
    exponents = args.exponents.split(',') if args.exponents else None
    runner = BenchRunner(args.settings, kind=args.kind, check_budgets=not args.no_budgets,
                         progress=lambda row: console.info(
                             f"   n={row['n']:>7} r={row['r']:>6} 用时 {row['total']:.3f}s"),
                         **({'exponents': exponents} if exponents else {}))
    df = runner.run(_parse_list(args.sizes))
    path = export(df, args.out)
    console.info(f"💾 已保存: {path} ({len(df)} 行)")

    slope = None
    if df['n'].nunique() >= 2:
        target = '2/3' if '2/3' in set(df['exponent']) else df['exponent'].iloc[0]
        slope = runner.slope(target)
        console.info(f"📊 log-log 斜率 (r = n^{target}): {slope:.3f}")
    if args.plot:
        console.info(f"💾 曲线已保存: {plot_bench(df, args.plot, slope)}")
    if console.json_mode:
        console.emit({'rows': df.to_dict(orient='records'), 'slope': slope})
    return 0


def build_parser() -> CliParser:
    common = CliParser(add_help=False)
    common.add_argument('--verbose', action='store_true', help='输出 DEBUG 日志')
    common.add_argument('--quiet', action='store_true', help='不输出进度横幅')
    common.add_argument('--json', action='store_true', help='把机器输出写到 stdout')
    common.add_argument('--config', help='JSON 配置文件')
    common.add_argument('--threads', type=int, help='线程数')
    common.add_argument('--seed', type=int, help='扰动与生成器种子')
    common.add_argument('--strict', action='store_true', default=None, help='校验失败时直接报错')
    common.add_argument('--db', help=f'数据库路径（默认 {DB_PATH}）')

    parser = CliParser(prog='main.py', description='平面图加权 Voronoi 图与精确直径')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('generate', parents=[common], help='生成测试图')
    p.add_argument('kind', choices=['grid', 'random-triangulation', 'cylinder'])
    p.add_argument('--k', type=int, default=3)
    p.add_argument('--l', type=int)
    p.add_argument('--n', type=int, default=50)
    p.add_argument('--rings', type=int, default=3)
    p.add_argument('--per-ring', type=int, default=6)
    p.add_argument('--max-len', type=int, default=1)
    p.add_argument('--directed', action='store_true')
    p.add_argument('--out')
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser('diameter', parents=[common], help='计算直径')
    p.add_argument('--input', required=True)
    p.add_argument('--r', type=int)
    p.add_argument('--verify', action='store_true')
    p.add_argument('--report')
    p.add_argument('--cache', action='store_true', help='使用数据库缓存边界距离表')
    p.set_defaults(func=cmd_diameter)

    for name, func, text in (('voronoi', cmd_voronoi, '构造 Voronoi 图'), ('render', cmd_render, '绘图')):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument('--input', required=True)
        p.add_argument('--weights')
        p.add_argument('--piece', type=int)
        p.add_argument('--r', type=int)
        if name == 'voronoi':
            p.add_argument('--farthest', action='store_true')
            p.add_argument('--trace', action='store_true')
            p.add_argument('--render')
            p.add_argument('--out')
        else:
            p.add_argument('--out', required=True)
            p.add_argument('--format', choices=['svg', 'png', 'dot'])
        p.set_defaults(func=func)

    p = sub.add_parser('bisector', parents=[common], help='平分线版本')
    p.add_argument('--input', required=True)
    p.add_argument('--pair', required=True)
    p.add_argument('--delta', type=int)
    p.add_argument('--all-criticals', action='store_true')
    p.set_defaults(func=cmd_bisector)

    p = sub.add_parser('rdiv', parents=[common], help='r-division 摘要')
    p.add_argument('--input', required=True)
    p.add_argument('--r', type=int)
    p.set_defaults(func=cmd_rdiv)

    p = sub.add_parser('verify', parents=[common], help='与暴力参照对照')
    p.add_argument('what', choices=['vd', 'bisector', 'tri', 'farthest', 'diameter'])
    p.add_argument('--input')
    p.add_argument('--kinds')
    p.add_argument('--count', type=int, default=5)
    p.add_argument('--n', type=int, default=36)
    p.add_argument('--r', type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser('bench', parents=[common], help='基准测试')
    p.add_argument('--kind', default='grid', choices=['grid', 'random', 'cylinder'])
    p.add_argument('--sizes', default='100,400,1600')
    p.add_argument('--exponents')
    p.add_argument('--out', default=f'{REPORT_DIR}/bench.csv')
    p.add_argument('--plot')
    p.add_argument('--no-budgets', action='store_true')
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    """主入口，返回退出码"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')
    console = Console(quiet=args.quiet, json_mode=args.json)
    try:
        args.settings = load_settings(args.config).update(
            threads=args.threads, seed=args.seed, strict=args.strict, db_path=args.db)
        # --json 时人读信息改走 stderr
        redirect = contextlib.redirect_stdout(sys.stderr) if args.json else contextlib.nullcontext()
        with redirect:
            return args.func(args, console)
    except PlanarError as e:
        print(f"✗ {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code
    except (FileNotFoundError, json.JSONDecodeError, ValueError) as e:
        print(f"✗ 输入错误: {e}", file=sys.stderr)
        return EXIT_INPUT
    except KeyboardInterrupt:
        print("\n\n✓ 用户中断")
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
