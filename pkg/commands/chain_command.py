#!/usr/bin/env python3
"""
对分拉伸链命令模块 (Chain Command Module)

功能说明:
- 实现 chain 命令：从 T(α₀) 出发执行若干次对分拉伸，逐步输出 μ₁D² 与夹逼区间
- 任何一个有限元步没有下降时退出码为 1
"""

import argparse
import json
import math

from commands.arguments import BUDGETS, to_radians, write_output
from commands.command_base import EXIT_FAILED, EXIT_OK, CommandBase, CommandResult
from core.bounds import bisect_stretch_chain
from core.settings import get_settings
from core.special_fn import J11


class ChainCommand(CommandBase):
    def __init__(self):
        super().__init__("chain", "沿对分拉伸链计算 μ₁D² 并检查单调下降")

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--start", type=float, default=math.pi / 3, help="起始孔径（默认 π/3）")
        parser.add_argument("--degrees", action="store_true", help="--start 以度为单位")
        parser.add_argument("--steps", type=int, default=4, help="对分拉伸次数")
        parser.add_argument("--budget", choices=BUDGETS, default=None)
        parser.add_argument("--out", type=str, default=None, help="JSON 报告路径")

    def execute(self, args: argparse.Namespace) -> CommandResult:
        alpha0 = to_radians(args.start, args.degrees)
        result = bisect_stretch_chain(alpha0, args.steps, budget=args.budget, settings=get_settings())
        if args.out:
            write_output(args.out, json.dumps(result.to_dict(), ensure_ascii=False, indent=2))

        lines = [f"{'n':>3}  {'α':>12}  {'μ₁D²':>14}  {'误差':>9}  夹逼区间"]
        for s in result.steps:
            mark = {True: "✅", False: "❌", None: " "}[s.decreasing]
            source = "" if s.fem else "（区间中点）"
            lines.append(f"{s.index:>3}  {s.aperture:>12.6e}  {s.mu1D2:>14.8f}  {s.error_estimate:>9.1e}  "
                         f"[{s.lower:.6f}, {s.upper:.6f}] {mark}{source}")
        lines.append(f"j11² = {J11 ** 2:.8f}")
        if not result.monotone:
            lines.append("❌ 链没有单调下降")
            return CommandResult("\n".join(lines), EXIT_FAILED)
        return CommandResult("\n".join(lines), EXIT_OK)
