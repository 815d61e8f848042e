#!/usr/bin/env python3
"""
命令基类模块 (Command Base Module)

功能说明:
- 定义所有子命令的抽象基类 CommandBase
- 每个命令声明名称、描述，并在 configure() 中登记自己的 argparse 参数
- execute() 接收解析后的参数，返回 CommandResult（输出文本 + 退出码）
- 提供默认的 help() 方法返回命令帮助信息

退出码约定:
- 0: 成功
- 1: 检查或审计未通过、求解失败
- 2: 参数或定义域错误
"""

import argparse
from abc import ABC, abstractmethod
from dataclasses import dataclass

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


@dataclass
class CommandResult:
    """命令输出与退出码"""
    text: str
    exit_code: int = EXIT_OK


class CommandBase(ABC):
    def __init__(self, name: str, description: str):
        self.name = name
        self.description = description

    def configure(self, parser: argparse.ArgumentParser) -> None:
        """登记命令参数（默认无参数）"""

    @abstractmethod
    def execute(self, args: argparse.Namespace) -> CommandResult:
        """执行命令逻辑"""

    def help(self) -> str:
        """默认帮助信息"""
        return f"{self.name:<10}: {self.description}"
