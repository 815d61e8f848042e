#!/usr/bin/env python3
"""
图数据命令模块 (Figure Command Module)

功能说明:
- 实现 figure 命令：重新生成亚等边族（图 2）或超等边族（图 3）的扫描数据集
- 数据集写成 CSV（SweepRecord 的固定列顺序），只写到 --out 指定的路径
- 输出与参考采样值的偏差摘要，超过 1% 的点标记 ⚠️
"""

import argparse
import logging

from commands.arguments import BUDGETS
from commands.command_base import CommandBase, CommandResult
from core.figures import FIGURES, compare_with_reference
from core.settings import get_settings
from core.sweep import figure_records, write_csv

logger = logging.getLogger(__name__)

COLUMNS = {2: ("mu1D2", "muaD2"), 3: ("mu1D2", "musD2")}


class FigureCommand(CommandBase):
    def __init__(self):
        super().__init__("figure", "生成亚等边 / 超等边族的特征值扫描数据（CSV）")

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("which", type=int, choices=FIGURES, help="2: 亚等边族，3: 超等边族")
        parser.add_argument("--resolution", type=int, default=12, help="均匀网格点数")
        parser.add_argument("--budget", choices=BUDGETS, default=None)
        parser.add_argument("--out", type=str, required=True, help="CSV 输出路径")

    def execute(self, args: argparse.Namespace) -> CommandResult:
        settings = get_settings()
        records = figure_records(args.which, args.resolution, args.budget, settings)
        path = write_csv(records, args.out)

        lines = [f"✅ 图 {args.which}: {len(records)} 行 → {path}"]
        for column in COLUMNS[args.which]:
            points = [(r.aperture, getattr(r, column)) for r in records if getattr(r, column) is not None]
            for d in compare_with_reference(args.which, column, points, settings):
                mark = "⚠️" if d.flagged else ("✅" if d.within_target else "·")
                lines.append(f"  {mark} {column:<7} {d.aperture:.4f}  计算 {d.computed:.4f}  "
                             f"参考 {d.reference:.4f}  偏差 {d.relative_error:.3%}")
        return CommandResult("\n".join(lines))
