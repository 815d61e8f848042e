#!/usr/bin/env python3
"""
命令管理器模块 (Command Manager Module)

功能说明:
- 负责注册、管理和执行所有子命令
- 用 argparse 子命令解析命令行（tritone <命令> [参数]）
- 路由到对应命令执行，统一处理 SpectralLabError
- 未知命令和参数错误返回退出码 2
"""

import argparse
import logging
from typing import Dict, List, Optional

from commands.command_base import EXIT_FAILED, EXIT_USAGE, CommandBase, CommandResult
from core.errors import ConvergenceError, SpectralLabError

logger = logging.getLogger(__name__)


class ArgumentError(Exception):
    """argparse 报告的参数错误"""


class _Parser(argparse.ArgumentParser):
    """出错时抛异常而不是直接退出进程"""

    def error(self, message: str):
        raise ArgumentError(message)


class CommandManager:
    def __init__(self, prog: str = "tritone"):
        self.prog = prog
        self.commands: Dict[str, CommandBase] = {}
        self._subparsers: Dict[str, argparse.ArgumentParser] = {}

    def register(self, command: CommandBase):
        """注册一个命令"""
        self.commands[command.name] = command

    def build_parser(self) -> argparse.ArgumentParser:
        parser = _Parser(prog=self.prog, description="三角形 Neumann 特征值实验室")
        subparsers = parser.add_subparsers(dest="command", metavar="<命令>", parser_class=_Parser)
        self._subparsers = {}
        for command in self.commands.values():
            sub = subparsers.add_parser(command.name, help=command.description,
                                        description=command.description)
            command.configure(sub)
            self._subparsers[command.name] = sub
        return parser

    def command_help(self, name: str) -> str:
        """单个命令的参数说明"""
        self.build_parser()
        return self._subparsers[name].format_help()

    def execute(self, argv: Optional[List[str]] = None) -> CommandResult:
        """
        解析并执行命令

        Args:
            argv: 命令行参数（不含程序名）

        Returns:
            CommandResult: 输出文本和退出码
        """
        argv = list(argv or [])
        if not argv:
            return CommandResult(f"❓ 缺少命令。输入 {self.prog} help 查看支持的命令。", EXIT_USAGE)
        if argv[0] not in self.commands:
            return CommandResult(f"❓ 未知命令: {argv[0]}. 输入 {self.prog} help 查看支持的命令。", EXIT_USAGE)

        try:
            args = self.build_parser().parse_args(argv)
        except ArgumentError as e:
            return CommandResult(f"❌ 参数错误: {e}", EXIT_USAGE)

        cmd = self.commands[args.command]
        try:
            return cmd.execute(args)
        except ConvergenceError as e:
            logger.error(f"{cmd.name} 求解失败: {e.to_dict()}")
            return CommandResult(f"❌ 求解失败: {e}", EXIT_FAILED)
        except SpectralLabError as e:
            logger.error(f"{cmd.name} 执行失败: {e.to_dict()}")
            return CommandResult(f"❌ [{e.error_code}] {e}", EXIT_USAGE)
