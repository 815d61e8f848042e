#!/usr/bin/env python3
"""
命令系统初始化模块

负责初始化和注册所有子命令
"""

import logging

from commands.audit_command import AuditCommand
from commands.bessel_command import BesselCommand
from commands.chain_command import ChainCommand
from commands.command_manager import CommandManager
from commands.figure_command import FigureCommand
from commands.help_command import HelpCommand
from commands.selftest_command import SelftestCommand
from commands.solve_command import SolveCommand

logger = logging.getLogger(__name__)


def create_command_manager() -> CommandManager:
    """
    创建并初始化命令管理器

    Returns:
        CommandManager: 已注册所有命令的管理器
    """
    manager = CommandManager()

    manager.register(HelpCommand(manager))
    manager.register(SolveCommand())
    manager.register(FigureCommand())
    manager.register(AuditCommand())
    manager.register(ChainCommand())
    manager.register(BesselCommand())
    manager.register(SelftestCommand())

    logger.debug(f"已注册 {len(manager.commands)} 个命令")
    return manager


def get_command_help() -> str:
    """
    获取所有命令的帮助信息

    Returns:
        str: 格式化的帮助信息
    """
    return create_command_manager().execute(["help"]).text
