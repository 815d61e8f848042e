#!/usr/bin/env python3
"""
tritone 命令行入口

用法:
    python main.py [--settings FILE] [--log-level LEVEL] [--log-dir DIR] <命令> [参数]

命令结果写到 stdout，日志写到 stderr；退出码 0 成功，1 检查失败，2 参数或定义域错误。
"""

import argparse
import sys
from typing import List, Optional

from commands import create_command_manager
from commands.command_base import EXIT_USAGE
from core.errors import SettingsError
from core.logging_system import get_logger, setup_logging_from_settings
from core.settings import load_settings, set_settings


def parse_global_options(argv: List[str]):
    """拆出命令之前的全局选项"""
    parser = argparse.ArgumentParser(prog="tritone", add_help=False, allow_abbrev=False)
    parser.add_argument("--settings", type=str, default=None, help="YAML 配置文件")
    parser.add_argument("--log-level", type=str, default=None, help="日志级别")
    parser.add_argument("--log-dir", type=str, default=None, help="日志目录（默认不写文件）")
    return parser.parse_known_args(argv)


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    options, rest = parse_global_options(argv)

    try:
        settings = load_settings(options.settings)
    except SettingsError as e:
        print(f"❌ [{e.error_code}] {e}")
        return EXIT_USAGE
    set_settings(settings)

    setup_logging_from_settings(settings.logging, level=options.log_level, logs_dir=options.log_dir)
    logger = get_logger(__name__)
    logger.debug(f"命令行: {rest}")

    result = create_command_manager().execute(rest)
    if result.text:
        print(result.text)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
