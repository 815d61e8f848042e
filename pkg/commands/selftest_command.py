#!/usr/bin/env python3
"""
自检命令模块 (Selftest Command Module)

功能说明:
- 实现 selftest 命令：运行编号 1-12 的验收检查（--only 选择子集）
- 逐项输出 ✅ / ❌ 和耗时；任一项失败时退出码为 1
- --out 写出全部检查细节的 JSON
"""

import argparse
import json
import logging

from commands.arguments import BUDGETS, write_output
from commands.command_base import EXIT_FAILED, EXIT_OK, CommandBase, CommandResult
from core.acceptance import run_acceptance
from core.errors import DomainError
from core.settings import get_settings

logger = logging.getLogger(__name__)


class SelftestCommand(CommandBase):
    def __init__(self):
        super().__init__("selftest", "运行验收检查")

    def configure(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--only", type=str, default=None, help="检查编号，如 1,2,7")
        parser.add_argument("--budget", choices=BUDGETS, default=None)
        parser.add_argument("--audit-count", type=int, default=200, help="审计检查的随机三角形个数")
        parser.add_argument("--out", type=str, default=None, help="JSON 报告路径")

    def execute(self, args: argparse.Namespace) -> CommandResult:
        selected = None
        if args.only:
            try:
                selected = [int(n) for n in args.only.split(",")]
            except ValueError as e:
                raise DomainError(f"无法解析检查编号: {args.only}") from e

        results = run_acceptance(selected, settings=get_settings(), budget=args.budget,
                                 audit_count=args.audit_count)
        if args.out:
            write_output(args.out, json.dumps([r.to_dict() for r in results], ensure_ascii=False, indent=2))

        lines = []
        for r in results:
            mark = "✅" if r.passed else "❌"
            suffix = f"  {r.error}" if r.error else ""
            lines.append(f"{mark} {r.number:>2}. {r.title}（{r.seconds:.1f} s）{suffix}")
        failed = [r for r in results if not r.passed]
        lines.append(f"{len(results) - len(failed)}/{len(results)} 项通过")
        return CommandResult("\n".join(lines), EXIT_FAILED if failed else EXIT_OK)
