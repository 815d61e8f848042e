#!/usr/bin/env python3
"""
求解命令模块 (Solve Command Module)

功能说明:
- 实现 solve 命令：对一个三角形外推 μ₁（或对称类 μ_s / 反对称类 μ_a）
- --k > 1 时额外列出最细网格上的前 k 个特征值及对称性标签
- 输出闭式界表；--out 写 JSON 报告，--mesh-out 导出网格文本
"""

import argparse
import json
import logging

from commands.arguments import (
    add_budget_arguments,
    add_shape_arguments,
    levels_from_args,
    shape_from_args,
    write_output,
)
from commands.command_base import CommandBase, CommandResult
from core.bounds.audit import general_entries, isosceles_entries
from core.fem import extrapolate_tone, neumann_spectrum, solver_mesh
from core.geometry import IsoscelesSpec, as_triangle, derived_scalars, isosceles_spec_of
from core.settings import get_settings

logger = logging.getLogger(__name__)

CLASS_LABELS = {None: "μ₁", "symmetric": "μ_s", "antisymmetric": "μ_a"}


class SolveCommand(CommandBase):
    def __init__(self):
        super().__init__("solve", "外推一个三角形的 Neumann 基频并列出闭式界")

    def configure(self, parser: argparse.ArgumentParser) -> None:
        add_shape_arguments(parser)
        add_budget_arguments(parser)
        parser.add_argument("--k", type=int, default=1, help="列出的特征值个数（最细网格）")
        parser.add_argument("--class", dest="symmetry_class", choices=("symmetric", "antisymmetric"),
                            default=None, help="只求对称类或反对称类（需要等腰输入）")
        parser.add_argument("--format", choices=("table", "json"), default="table")
        parser.add_argument("--out", type=str, default=None, help="JSON 报告路径")
        parser.add_argument("--mesh-out", type=str, default=None, help="最细网格的文本导出路径")

    def execute(self, args: argparse.Namespace) -> CommandResult:
        settings = get_settings()
        shape = shape_from_args(args)
        triangle = as_triangle(shape)
        spec = shape if isinstance(shape, IsoscelesSpec) else isosceles_spec_of(triangle)
        solve_shape = spec if spec is not None else triangle
        d2 = derived_scalars(triangle).D ** 2

        tone = extrapolate_tone(solve_shape, levels=levels_from_args(args), symmetry_class=args.symmetry_class,
                                settings=settings, budget=args.budget)
        label = CLASS_LABELS[args.symmetry_class]
        report = {
            "triangle": triangle.to_list(),
            "aperture": None if spec is None else spec.aperture,
            "class": args.symmetry_class,
            "tone": tone.to_dict(),
            "tone_D2": tone.value * d2,
        }

        finest = tone.levels_used[-1] if tone.levels_used else None
        if args.k > 1 and finest is not None:
            modes = neumann_spectrum(solve_shape, finest, args.k, settings)
            report["spectrum"] = [m.to_dict() for m in modes]

        if args.symmetry_class is None:
            entries = general_entries(triangle, tone, settings.slack_factor)
            if spec is not None:
                entries.extend(isosceles_entries(spec, tone, None, None, settings.slack_factor))
            report["bounds"] = [e.to_dict() for e in entries]

        if args.mesh_out and finest is not None:
            write_output(args.mesh_out, solver_mesh(solve_shape, finest).to_ascii())
        if args.out:
            write_output(args.out, json.dumps(report, ensure_ascii=False, indent=2))

        if args.format == "json":
            return CommandResult(json.dumps(report, ensure_ascii=False, indent=2))
        return CommandResult(self._table(report, label))

    @staticmethod
    def _table(report: dict, label: str) -> str:
        tone = report["tone"]
        lines = [f"三角形 {report['triangle']}"]
        if report["aperture"] is not None:
            lines.append(f"孔径 α = {report['aperture']:.10f}")
        if tone["fallback"] is not None:
            lines.append(f"⚠️ 低于有限元下限，{label} ∈ [{tone['fallback']['lower']:.8f}, "
                         f"{tone['fallback']['upper']:.8f}]")
        lines.append(f"{label} = {tone['value']:.10f} ± {tone['error_estimate']:.2e}"
                     f"   {label}D² = {report['tone_D2']:.8f}")
        if tone["observed_order"] is not None:
            flag = " ⚠️" if tone["order_flagged"] else ""
            lines.append(f"观测收敛阶 {tone['observed_order']:.3f}{flag}，层级 {tone['levels_used']}")
        for i, mode in enumerate(report.get("spectrum", []), start=1):
            lines.append(f"  μ_{i} = {mode['eigenvalue']:.10f}  [{mode['symmetry']}]")
        for entry in report.get("bounds", []):
            mark = "✅" if entry["satisfied"] else "❌"
            if entry["status"] == "within_slack":
                mark = "⚠️"
            lines.append(f"  {mark} {entry['name']:<26}{entry['kind']:<7}{entry['value']:>16.8f}")
        return "\n".join(lines)
