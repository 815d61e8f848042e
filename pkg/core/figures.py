"""
图表参考数据

亚等边族（孔径 α ∈ (0, π/3]）与超等边族（β ∈ [π/3, π)）的 μD² 采样值，
用于回归比较和生成扫描网格。数值保留 4 位小数。
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import DomainError
from core.settings import LabSettings, get_settings

logger = logging.getLogger(__name__)

FIGURE_SUBEQUILATERAL = 2
FIGURE_SUPEREQUILATERAL = 3
FIGURES = (FIGURE_SUBEQUILATERAL, FIGURE_SUPEREQUILATERAL)

# 打印出来的 π/3 近似值
PRINTED_EQUILATERAL = 1.0472
# 与 π/3 的距离小于该值的亚等边采样点按 π/3 求解
SNAP_TOL = 1e-4

REFERENCE_FIG2_MU1: List[Tuple[float, float]] = [
    (1.0472, 17.5460), (1.0001, 17.2927), (0.9529, 17.0484), (0.9058, 16.8145),
    (0.8587, 16.5920), (0.8116, 16.3816), (0.7645, 16.1837), (0.7173, 15.9985),
    (0.6702, 15.8261), (0.6231, 15.6665), (0.5760, 15.5195), (0.5288, 15.3850),
    (0.4817, 15.2629), (0.4346, 15.1530), (0.3875, 15.0551), (0.3403, 14.9689),
    (0.2932, 14.8943), (0.2461, 14.8312), (0.1990, 14.7793), (0.1518, 14.7386),
    (0.1047, 14.7089), (0.05, 14.688),
]
REFERENCE_FIG2_MUA: List[Tuple[float, float]] = [
    (1.0472, 17.5460), (1.0001, 18.8398), (0.9529, 20.3180), (0.9058, 22.0180),
    (0.8587, 23.9871), (0.8116, 26.2863), (0.7645, 28.9953), (0.7173, 32.2201),
]
REFERENCE_FIG3_MUS: List[Tuple[float, float]] = [
    (1.0472, 17.5460), (1.0996, 19.4768), (1.1519, 21.5119), (1.2043, 23.6435),
    (1.2566, 25.8595), (1.3090, 28.1419), (1.3614, 30.4660), (1.4137, 32.8003),
    (1.4661, 35.1073), (1.5184, 37.3464), (1.5708, 39.4785), (1.7237, 44.8402),
    (1.8766, 48.8091), (2.0296, 51.6706), (2.1825, 53.7772), (2.3354, 55.3675),
    (2.4883, 56.5804), (2.6412, 57.4933), (2.7942, 58.1511), (2.9471, 58.5981),
]
REFERENCE_FIG3_MU1: List[Tuple[float, float]] = [
    (1.0472, 17.5460), (1.0996, 17.7879), (1.1519, 18.0243), (1.2043, 18.2556),
    (1.2566, 18.4818), (1.3090, 18.7031), (1.3614, 18.9196), (1.4137, 19.1314),
    (1.4661, 19.3386), (1.5184, 19.5412), (1.5708, 19.7392), (1.7237, 20.2918),
    (1.8766, 20.8052), (2.0296, 21.2783), (2.1825, 21.7085), (2.3354, 22.0927),
    (2.4883, 22.4262), (2.6412, 22.7038), (2.7942, 22.9191), (2.9471, 23.0656),
    (3.1000, 23.1767),
]

# 退化端点的极限值，不参与求解
LIMIT_POINTS: Dict[int, Dict[str, Tuple[float, float]]] = {
    FIGURE_SUBEQUILATERAL: {"mu1D2": (0.0, 14.682)},
    FIGURE_SUPEREQUILATERAL: {"mu1D2": (math.pi, 23.18), "musD2": (math.pi, 58.7279)},
}

REFERENCE_COLUMNS: Dict[int, Dict[str, List[Tuple[float, float]]]] = {
    FIGURE_SUBEQUILATERAL: {"mu1D2": REFERENCE_FIG2_MU1, "muaD2": REFERENCE_FIG2_MUA},
    FIGURE_SUPEREQUILATERAL: {"mu1D2": REFERENCE_FIG3_MU1, "musD2": REFERENCE_FIG3_MUS},
}


def _check_figure(which: int) -> None:
    if which not in FIGURES:
        raise DomainError(f"只支持图 {FIGURES}: {which}")


def solve_aperture(which: int, aperture: float) -> float:
    """采样孔径对应的求解孔径：亚等边族中打印的 1.0472 按 π/3 求解"""
    _check_figure(which)
    if which == FIGURE_SUBEQUILATERAL and abs(aperture - math.pi / 3) < SNAP_TOL:
        return math.pi / 3
    return aperture


def reference_apertures(which: int) -> List[float]:
    """参考数据中出现的全部孔径（不含退化端点）"""
    _check_figure(which)
    values = {a for column in REFERENCE_COLUMNS[which].values() for a, _ in column}
    return sorted(values)


def figure_apertures(which: int, resolution: int = 12) -> List[float]:
    """
    扫描网格：均匀网格与参考孔径的并集，升序

    Args:
        which: 2（亚等边，(0, π/3]）或 3（超等边，(π/3, π)）
        resolution: 均匀网格的点数

    Returns:
        List[float]: 求解孔径
    """
    _check_figure(which)
    if resolution < 1:
        raise DomainError(f"resolution 必须为正: {resolution}")
    if which == FIGURE_SUBEQUILATERAL:
        grid = np.linspace(0.0, math.pi / 3, resolution + 1)[1:]
    else:
        grid = np.linspace(math.pi / 3, math.pi, resolution + 2)[1:-1]
    merged = [solve_aperture(which, a) for a in reference_apertures(which)] + [float(a) for a in grid]

    unique: List[float] = []
    for a in sorted(merged):
        if not unique or abs(a - unique[-1]) > 1e-9:
            unique.append(a)
    return unique


def reference_value(which: int, column: str, aperture: float, tol: float = 1e-6) -> Optional[float]:
    """参考值；该孔径没有参考数据时返回 None"""
    _check_figure(which)
    for a, value in REFERENCE_COLUMNS[which].get(column, []):
        if abs(solve_aperture(which, a) - aperture) <= tol:
            return value
    return None


@dataclass(frozen=True)
class FigureDeviation:
    """计算值与参考值的偏差"""
    figure: int
    column: str
    aperture: float
    computed: float
    reference: float
    relative_error: float
    within_target: bool
    flagged: bool

    def to_dict(self):
        return {
            "figure": self.figure,
            "column": self.column,
            "aperture": self.aperture,
            "computed": self.computed,
            "reference": self.reference,
            "relative_error": self.relative_error,
            "within_target": self.within_target,
            "flagged": self.flagged,
        }


def compare_with_reference(which: int, column: str, points: Sequence[Tuple[float, float]],
                           settings: Optional[LabSettings] = None) -> List[FigureDeviation]:
    """
    与参考数据逐点比较

    相对误差超过 figure_tolerance（0.5%）时未达目标，超过 figure_flag_tolerance（1%）时标记。

    Args:
        which: 图号
        column: mu1D2 / muaD2 / musD2
        points: (孔径, 计算值) 序列

    Returns:
        List[FigureDeviation]: 只包含有参考值的孔径
    """
    settings = settings or get_settings()
    deviations = []
    for aperture, computed in points:
        ref = reference_value(which, column, aperture)
        if ref is None:
            continue
        rel = abs(computed - ref) / ref
        deviation = FigureDeviation(
            figure=which, column=column, aperture=aperture, computed=computed, reference=ref,
            relative_error=rel, within_target=rel <= settings.figure_tolerance,
            flagged=rel > settings.figure_flag_tolerance,
        )
        if deviation.flagged:
            logger.warning(f"图 {which} {column} 在 {aperture:.4f} 处偏差 {rel:.2%}")
        deviations.append(deviation)
    return deviations


def limit_approach(which: int, column: str,
                   points: Sequence[Tuple[float, float]]) -> Optional[Dict[str, object]]:
    """
    检查已求解的点是否随孔径趋向退化端点而趋近极限值

    Args:
        which: 图号
        column: mu1D2 / muaD2 / musD2
        points: (孔径, 计算值) 序列

    Returns:
        该列没有极限值时返回 None；否则 distances 按孔径离端点由远到近排列，
        approaching 表示这些距离不增
    """
    _check_figure(which)
    limit = LIMIT_POINTS[which].get(column)
    if limit is None:
        return None
    end, value = limit
    ordered = sorted(points, key=lambda p: abs(p[0] - end), reverse=True)
    distances = [abs(v - value) for _, v in ordered]
    approaching = all(near <= far for far, near in zip(distances, distances[1:]))
    if not approaching:
        logger.warning(f"图 {which} {column} 没有单调趋近端点 {end:.4f} 处的极限 {value}")
    return {
        "column": column,
        "limit_aperture": end,
        "limit_value": value,
        "apertures": [a for a, _ in ordered],
        "distances": distances,
        "approaching": approaching,
    }
