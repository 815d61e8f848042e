"""
命令共用的参数

三角形输入（--aperture/--leg 或 --vertices）、--degrees 换算、网格层级与预算、输出路径。
角度只在这里从度换算为弧度，内部一律使用弧度。
"""

import argparse
import logging
import math
from pathlib import Path
from typing import List, Optional

from core.errors import DomainError
from core.geometry import IsoscelesSpec, Shape, Triangle

logger = logging.getLogger(__name__)

BUDGETS = ("fast", "default", "precise")


def add_shape_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--aperture", type=float, help="等腰三角形孔径（弧度，配合 --degrees 用度）")
    group.add_argument("--vertices", type=str, help="顶点坐标 x0,y0,x1,y1,x2,y2")
    parser.add_argument("--leg", type=float, default=1.0, help="腰长（默认 1）")
    parser.add_argument("--degrees", action="store_true", help="--aperture 以度为单位")


def add_budget_arguments(parser: argparse.ArgumentParser, default: Optional[str] = None) -> None:
    parser.add_argument("--budget", choices=BUDGETS, default=default, help="网格预算")
    parser.add_argument("--levels", type=str, default=None, help="网格层级，如 32,64,128（覆盖 --budget）")


def to_radians(value: float, degrees: bool) -> float:
    return math.radians(value) if degrees else value


def shape_from_args(args: argparse.Namespace) -> Shape:
    """
    由命令行参数构造三角形

    Returns:
        Shape: --aperture 给出 IsoscelesSpec；--vertices 给出 Triangle
    """
    if args.aperture is not None:
        return IsoscelesSpec(to_radians(args.aperture, args.degrees), args.leg)
    try:
        coords = [float(c) for c in args.vertices.split(",")]
    except ValueError as e:
        raise DomainError(f"无法解析顶点坐标: {args.vertices}") from e
    return Triangle.from_flat(coords)


def levels_from_args(args: argparse.Namespace) -> Optional[List[int]]:
    if not getattr(args, "levels", None):
        return None
    try:
        return [int(n) for n in args.levels.split(",")]
    except ValueError as e:
        raise DomainError(f"无法解析网格层级: {args.levels}") from e


def write_output(path: str, text: str) -> Path:
    """写到显式给出的 --out 路径"""
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    logger.info(f"已写出 {out}")
    return out
