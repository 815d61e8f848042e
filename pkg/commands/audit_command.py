#!/usr/bin/env python3
"""
审计命令模块 (Audit Command Module)

功能说明:
- 实现 audit 命令：对 --count 个随机三角形（由 --seed 决定）加固定压力测试集做不等式链审计
- 全部 chain_ok 时退出码 0，否则列出失败项并返回 1
- --out 写出 JSON 报告；相同参数的两次运行输出逐字节一致
"""

import argparse
import json
import logging

from commands.arguments import BUDGETS, write_output
from commands.command_base import EXIT_FAILED, EXIT_OK, CommandBase, CommandResult
from core.bounds import audit_batch
from core.settings import get_settings

logger = logging.getLogger(__name__)


class AuditCommand(CommandBase):
    def __init__(self):
        super().__init__("audit", "在随机三角形和压力测试集上审计全部不等式")

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--count", type=int, default=50, help="随机三角形个数")
        parser.add_argument("--seed", type=int, default=7, help="随机种子")
        parser.add_argument("--budget", choices=BUDGETS, default="fast")
        parser.add_argument("--no-stress", action="store_true", help="不包含压力测试集")
        parser.add_argument("--verbose", action="store_true", help="输出每个三角形的界表")
        parser.add_argument("--out", type=str, default=None, help="JSON 报告路径")

    def execute(self, args: argparse.Namespace) -> CommandResult:
        reports = audit_batch(args.count, args.seed, budget=args.budget, settings=get_settings(),
                              include_stress=not args.no_stress)
        failed = [(label, r) for label, r in reports if not r.chain_ok]
        warned = sum(len(r.warnings()) for _, r in reports)

        if args.out:
            payload = {
                "count": args.count,
                "seed": args.seed,
                "budget": args.budget,
                "all_chain_ok": not failed,
                "reports": [{"label": label, **r.to_dict()} for label, r in reports],
            }
            write_output(args.out, json.dumps(payload, ensure_ascii=False, indent=2))

        lines = []
        if args.verbose:
            lines.extend(f"[{label}]\n{r.to_table()}" for label, r in reports)
        lines.append(f"审计 {len(reports)} 个三角形: {len(reports) - len(failed)} 通过，"
                     f"{len(failed)} 失败，{warned} 条容差内警告")
        for label, r in failed:
            names = ", ".join(e.name for e in r.failures()) or "对称性"
            lines.append(f"  ❌ {label}: {names}")
        if failed:
            return CommandResult("\n".join(lines), EXIT_FAILED)
        lines.append("✅ 全部不等式链成立")
        return CommandResult("\n".join(lines), EXIT_OK)
