#!/usr/bin/env python3
"""
帮助命令模块 (Help Command Module)

功能说明:
- 实现 help 命令，列出命令管理器中注册的所有命令
- help <命令> 输出该命令的完整参数说明
"""

import argparse

from commands.command_base import EXIT_USAGE, CommandBase, CommandResult


class HelpCommand(CommandBase):
    def __init__(self, manager):
        super().__init__("help", "显示帮助信息")
        self.manager = manager

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("topic", nargs="?", default=None, help="命令名称")

    def execute(self, args: argparse.Namespace) -> CommandResult:
        topic = getattr(args, "topic", None)
        if topic is None:
            lines = ["支持的命令:"]
            for cmd in self.manager.commands.values():
                lines.append(f"  {cmd.help()}")
            return CommandResult("\n".join(lines))

        if topic not in self.manager.commands:
            return CommandResult(f"❓ 未知命令: {topic}", EXIT_USAGE)
        return CommandResult(self.manager.command_help(topic))
