#!/usr/bin/env python3
"""
pwlab - 射影结构的 Patterson–Walker 度量精确计算实验室
命令行入口

功能：
1. 读取场景文件（或扫描画廊），在精确有理函数域上运行检查
2. 检查并发执行，单个检查出错不影响其他检查
3. 文本报告带锚点和耗时；JSON 报告规范、逐字节可复现
4. 统一配置管理 - 默认值从 config.yaml 读取

用法：
    python pwlab.py check gallery/E2.json
    python pwlab.py check --gallery --format json
    python pwlab.py list
"""

import argparse
import asyncio
import contextlib
import logging
import sys
from typing import List, Optional

from src.cli import CheckRunner, GalleryScanner, Scenario, emit_report, manifest, parse_scenario
from src.config import FORMATS, ConfigManager
from src.errors import ScenarioError

logger = logging.getLogger('PWLab')

EXIT_OK, EXIT_FAILED, EXIT_INVALID = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pwlab",
        description="射影结构的 Patterson–Walker 度量：精确符号检查",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例:
  python pwlab.py check gallery/E2.json
  python pwlab.py check gallery/E3_ricciflat.json --format json
  python pwlab.py check --gallery --jobs 8
  python pwlab.py list
        """
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="运行场景中的检查")
    check.add_argument("scenario", nargs="?", help="场景文件 (UTF-8 JSON)")
    check.add_argument("--format", "-f", choices=FORMATS, default=None, help="报告格式")
    check.add_argument("--jobs", "-j", type=int, default=None, help="并发检查数")
    check.add_argument("--degree-bound", "-d", type=int, default=None, help="多项式试探解次数上限")
    check.add_argument("--gallery", "-g", action="store_true", help="运行画廊中的全部场景")
    check.add_argument("--config", "-c", default="config.yaml", help="配置文件路径")
    check.add_argument("--verbose", "-v", action="store_true", help="输出 DEBUG 日志")

    sub.add_parser("list", help="列出全部检查及其锚点")
    return parser


def _load_scenarios(args, config: ConfigManager) -> List[Scenario]:
    scenarios = []
    if args.gallery:
        scanner = GalleryScanner(config.gallery.directories, config.gallery.pattern)
        found = scanner.scan_all()
        scenarios.extend(found[name] for name in sorted(found))
    if args.scenario:
        scenarios.append(parse_scenario(args.scenario))
    return scenarios


def command_check(args) -> int:
    # 进度信息走 stderr，stdout 只留给报告
    with contextlib.redirect_stdout(sys.stderr):
        print("🚀 pwlab 启动中...")
        config = ConfigManager(args.config)
        level = "DEBUG" if args.verbose else config.logging.level
        logging.basicConfig(
            level=getattr(logging, level, logging.INFO),
            format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        )

        if not args.scenario and not args.gallery:
            print("❌ 需要场景文件或 --gallery")
            return EXIT_INVALID
        try:
            scenarios = _load_scenarios(args, config)
        except ScenarioError as e:
            print(f"❌ 场景无效: {e}")
            return EXIT_INVALID

        jobs = args.jobs
        if jobs is None and len(scenarios) == 1:
            jobs = scenarios[0].options.jobs
        config.apply_overrides(jobs=jobs, fmt=args.format)

        runner = CheckRunner(config, degree_override=args.degree_bound)
        report = asyncio.run(runner.run(scenarios))

    sys.stdout.buffer.write(emit_report(report, config.runner.format))
    sys.stdout.flush()
    return EXIT_OK if report.all_passed else EXIT_FAILED


def command_list(args) -> int:
    for name, anchor, ops in manifest():
        print(f"{name}")
        print(f"    {anchor}")
        if ops:
            print(f"    操作: {', '.join(ops)}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """主入口函数"""
    args = build_parser().parse_args(argv)
    try:
        if args.command == "list":
            return command_list(args)
        return command_check(args)
    except KeyboardInterrupt:
        print("\n👋 已中断", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
