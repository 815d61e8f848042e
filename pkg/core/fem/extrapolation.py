"""
Richardson 外推

在比值为 2 的网格层级上求基频，假定二阶收敛消去主误差项：
    value = μ_f + (μ_f − μ_m) / 3
观测阶 p = log2((μ_c − μ_m) / (μ_m − μ_f)) 取自最细的三层，不在 [1.5, 2.5] 内时记录警告。

孔径低于有限元下限（默认 0.05）的等腰三角形不求解，改为报告闭式夹逼区间。
"""

import logging
import math
from typing import Callable, List, Optional, Sequence

from core.errors import DomainError
from core.fem.schema import ExtrapolatedTone, SymmetryClass
from core.fem.spectrum import neumann_spectrum
from core.fem.symmetry import symmetry_reduced_tone
from core.geometry.triangle import IsoscelesSpec, Shape
from core.settings import LabSettings, get_settings

logger = logging.getLogger(__name__)

ORDER_RANGE = (1.5, 2.5)


def check_levels(levels: Sequence[int]) -> List[int]:
    """至少三层，相邻比值为 2"""
    levels = [int(n) for n in levels]
    if len(levels) < 3:
        raise DomainError(f"外推至少需要 3 个层级: {levels}")
    for coarse, fine in zip(levels, levels[1:]):
        if fine != 2 * coarse:
            raise DomainError(f"相邻层级之比必须为 2: {levels}")
    return levels


def richardson(values: Sequence[float], levels: Sequence[int]) -> ExtrapolatedTone:
    """
    对已经算好的各层特征值做外推

    Args:
        values: 与 levels 对应的特征值
        levels: 网格层级

    Returns:
        ExtrapolatedTone: 外推值、误差估计（最后一次修正量）和观测阶
    """
    levels = check_levels(levels)
    mu_c, mu_m, mu_f = values[-3], values[-2], values[-1]
    correction = (mu_f - mu_m) / 3.0
    value = mu_f + correction

    numerator, denominator = mu_c - mu_m, mu_m - mu_f
    if denominator != 0.0 and numerator / denominator > 0.0:
        order = math.log2(numerator / denominator)
    else:
        order = float("nan")
    flagged = not (ORDER_RANGE[0] <= order <= ORDER_RANGE[1])
    if flagged:
        logger.warning(f"观测收敛阶 {order:.3f} 不在 {ORDER_RANGE} 内（角点奇异或网格各向异性）")

    return ExtrapolatedTone(
        value=value,
        error_estimate=abs(correction),
        levels_used=list(levels),
        observed_order=order,
        raw_values=[float(v) for v in values],
        order_flagged=flagged,
    )


def floor_fallback(spec: IsoscelesSpec) -> ExtrapolatedTone:
    """低于孔径下限时的闭式夹逼区间"""
    # 延迟导入：bounds 依赖 fem
    from core.bounds.formulas import boundsiso_sandwich

    sandwich = boundsiso_sandwich(spec.aperture, spec.leg)
    lower, upper = sandwich["lower"], sandwich["upper"]
    return ExtrapolatedTone(
        value=0.5 * (lower + upper),
        error_estimate=0.5 * (upper - lower),
        levels_used=[],
        observed_order=float("nan"),
        fallback={"lower": lower, "upper": upper},
    )


def extrapolate_tone(shape: Shape, levels: Optional[Sequence[int]] = None,
                     symmetry_class: Optional[str] = None,
                     settings: Optional[LabSettings] = None,
                     budget: Optional[str] = None,
                     tone_at: Optional[Callable[[int], float]] = None) -> ExtrapolatedTone:
    """
    外推基频 μ₁（或对称类 μ_s / 反对称类 μ_a）

    Args:
        shape: Triangle 或 IsoscelesSpec
        levels: 网格层级，None 时取预算对应的层级
        symmetry_class: None 表示整体 μ₁；否则 "symmetric" / "antisymmetric"（需要 IsoscelesSpec）
        settings: 配置
        budget: 预算名（fast / default / precise）
        tone_at: 自定义的“层级 → 特征值”函数（测试用）

    Returns:
        ExtrapolatedTone: 外推结果
    """
    settings = settings or get_settings()
    levels = check_levels(levels if levels is not None else settings.levels_for(budget))
    cls = SymmetryClass(symmetry_class) if symmetry_class is not None else None

    if cls is not None and not isinstance(shape, IsoscelesSpec):
        raise DomainError("对称约化求解需要 IsoscelesSpec 输入")

    if isinstance(shape, IsoscelesSpec) and shape.aperture < settings.fem_aperture_floor:
        if cls != SymmetryClass.ANTISYMMETRIC:
            logger.warning(
                f"孔径 {shape.aperture} 低于有限元下限 {settings.fem_aperture_floor}，改用闭式夹逼区间"
            )
            tone = floor_fallback(shape)
            tone.symmetry_class = None if cls is None else cls.value
            return tone
        logger.warning(f"孔径 {shape.aperture} 低于有限元下限，反对称类仍用有限元求解，精度可能下降")

    if tone_at is None:
        if cls is None:
            def tone_at(n: int) -> float:
                return neumann_spectrum(shape, n, 1, settings)[0].eigenvalue
        else:
            def tone_at(n: int) -> float:
                return symmetry_reduced_tone(shape, n, cls.value, settings).eigenvalue

    values = [tone_at(n) for n in levels]
    tone = richardson(values, levels)
    tone.symmetry_class = None if cls is None else cls.value
    logger.debug(f"外推: {values} → {tone.value:.8f} ± {tone.error_estimate:.2e}, 阶 {tone.observed_order:.2f}")
    return tone
