#!/usr/bin/env python3
"""
Bessel 命令模块 (Bessel Command Module)

功能说明:
- 实现 bessel 命令：查询 J0/J1 的正根、J'_ν 的正根、交叉点 j'_{ν,1} = j11 以及 J_ν(x) 的值
- 根以 10 位小数输出
"""

import argparse

from commands.command_base import CommandBase, CommandResult
from core.errors import DomainError
from core.special_fn import RootKind, bessel_j, bessel_j_zero, describe_root, jprime_crossing

ZERO_ORDERS = {"J0": 0, "J1": 1}


class BesselCommand(CommandBase):
    def __init__(self):
        super().__init__("bessel", "查询 Bessel 函数的根与取值")

    def configure(self, parser: argparse.ArgumentParser) -> None:
        group = parser.add_mutually_exclusive_group(required=True)
        group.add_argument("--zero", nargs=2, metavar=("FUNC", "INDEX"), help="J0 或 J1 的第 INDEX 个正根")
        group.add_argument("--jprime", nargs="+", metavar="ORDER", help="J'_ν 的第一个正根: ORDER [INDEX=1]")
        group.add_argument("--crossing", action="store_true", help="j'_{ν,1} = j11 的 ν")
        group.add_argument("--value", nargs=2, type=float, metavar=("ORDER", "X"), help="J_ν(x)")

    def execute(self, args: argparse.Namespace) -> CommandResult:
        if args.crossing:
            return CommandResult(f"{jprime_crossing():.10f}")
        if args.value is not None:
            order, x = args.value
            return CommandResult(f"{bessel_j(order, x):.15g}")
        if args.zero is not None:
            func, index = args.zero
            if func not in ZERO_ORDERS:
                raise DomainError(f"只支持 {list(ZERO_ORDERS)}: {func}")
            return CommandResult(f"{bessel_j_zero(ZERO_ORDERS[func], _index(index)):.10f}")

        if len(args.jprime) > 2:
            raise DomainError(f"--jprime 需要 ORDER [INDEX]: {args.jprime}")
        order = _number(args.jprime[0])
        index = _index(args.jprime[1]) if len(args.jprime) == 2 else 1
        root = describe_root(order, RootKind.ZERO_OF_JPRIME, index)
        return CommandResult(f"{root.value:.10f}")


def _index(text: str) -> int:
    try:
        return int(text)
    except ValueError as e:
        raise DomainError(f"INDEX 必须是正整数: {text}") from e


def _number(text: str) -> float:
    try:
        return float(text)
    except ValueError as e:
        raise DomainError(f"ORDER 必须是数: {text}") from e
