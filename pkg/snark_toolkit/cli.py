#!/usr/bin/env python3
"""
snark-toolkit CLI入口点
提供命令行界面来运行分析、构造、复核和验收命令
"""

import argparse
import os
import sys
from typing import List, Optional

from . import __version__
from .config import config
from .monitoring.logger import add_file_logging, add_json_logging, set_log_dir, set_log_level, setup_logger
from .parsers.results import write_result
from .tools import register_all_tools
from .tools.common import EXIT_ERROR, exit_code
from .utils import bytes_to_human_readable, format_duration

logger = setup_logger(__name__)


class _ArgumentParser(argparse.ArgumentParser):
    """用法错误按错误退出码退出"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: 错误: {message}\n")


def create_argument_parser() -> argparse.ArgumentParser:
    """创建命令行参数解析器"""
    parser = _ArgumentParser(
        prog="snark-toolkit",
        description="立方图完美匹配指数与圆流数的计算工具",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例用法:
  %(prog)s pmi petersen                      # 计算 Petersen 图的完美匹配指数
  %(prog)s transitions d_ps                  # D_Ps 的转移关系
  %(prog)s build-superposition basic:theta   # 构造 82 顶点的重叠加
  %(prog)s cfn petersen --qmax 3             # 圆流数
  %(prog)s verify-paper                      # 全部验收检查
  %(prog)s --threads 4 --output r.json pmi graphs.g6
        """
    )

    # 运行配置参数
    run_group = parser.add_argument_group('运行配置')
    run_group.add_argument(
        '--threads',
        type=int,
        default=config.search.THREADS,
        help=f'并行进程数，不影响结果 (默认: {config.search.THREADS})'
    )
    run_group.add_argument(
        '--seed',
        type=int,
        default=config.search.SEED,
        help=f'随机数种子 (默认: {config.search.SEED})'
    )
    run_group.add_argument(
        '--output',
        help='把结果文档写入文件，否则输出到标准输出'
    )

    # 日志配置参数
    log_group = parser.add_argument_group('日志配置')
    log_group.add_argument(
        '--log-level',
        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'],
        default=config.logging.LOG_LEVEL.upper(),
        help=f'日志级别 (默认: {config.logging.LOG_LEVEL.upper()})'
    )
    log_group.add_argument(
        '--log-file',
        help='日志文件路径'
    )
    log_group.add_argument(
        '--log-dir',
        help='日志目录路径'
    )
    log_group.add_argument(
        '--json-logs',
        action='store_true',
        help='启用JSON格式日志'
    )

    parser.add_argument(
        '--version',
        action='version',
        version=f'snark-toolkit {__version__}'
    )

    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    register_all_tools(subparsers)
    return parser


def configure_logging(args: argparse.Namespace):
    """根据命令行参数配置日志"""
    # 目录要在添加处理器之前切换
    if args.log_dir:
        set_log_dir(args.log_dir)

    set_log_level(args.log_level)

    if args.log_file:
        add_file_logging(args.log_file)

    if args.json_logs:
        json_file = os.path.join(config.logging.LOG_DIR or './logs', 'snark_toolkit.json')
        add_json_logging(json_file)


def main(argv: Optional[List[str]] = None) -> int:
    """
    主函数

    参数:
        argv: 命令行参数，默认取 sys.argv

    返回:
        退出码: 0 成功，1 否定判定，2 错误
    """
    parser = create_argument_parser()
    args = parser.parse_args(argv)

    configure_logging(args)
    config.search.THREADS = args.threads
    config.search.SEED = args.seed

    try:
        config.validate()
        logger.debug(f"配置: {config.get_summary()}")
        document = args.handler(args)
    except Exception as e:
        logger.error(f"命令 {args.command} 无法执行: {e}")
        return EXIT_ERROR

    if args.output:
        write_result(document, args.output)
        logger.info(f"结果文档已写入 {args.output}")
    else:
        print(document.to_json(indent=config.output.JSON_INDENT))

    logger.info(f"{args.command}: {document.verdict}" + (f" ({document.value})" if document.value else ""))
    if document.timing:
        memory = document.timing.get("rss_mb")
        logger.info(
            f"耗时 {format_duration(document.timing['total_seconds'])}"
            + (f"，内存 {bytes_to_human_readable(int(memory * 2**20))}" if memory else "")
        )
    return exit_code(document)


def cli_main():
    """CLI入口点"""
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("已中断", file=sys.stderr)
        sys.exit(EXIT_ERROR)


if __name__ == "__main__":
    cli_main()
