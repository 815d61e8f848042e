"""
对分拉伸链

从亚等边（或等边）T(α₀) 出发，反复执行 sin(αₙ/2) = sin(αₙ₋₁/2)/√2，
每一步的 μ₁D² 应严格下降并趋于 j11²。孔径低于有限元下限后不再求解，改报夹逼区间。
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from core.bounds.formulas import APERTURE_EDGE_TOL, boundsiso_sandwich
from core.errors import ApertureRangeError, DomainError
from core.fem.extrapolation import extrapolate_tone
from core.fem.parallel import ordered_map
from core.geometry.maps import bisect_stretch_step
from core.geometry.triangle import IsoscelesSpec
from core.settings import LabSettings, get_settings
from core.special_fn import J11

logger = logging.getLogger(__name__)

MAX_STEPS = 60


@dataclass
class ChainStep:
    """链上的一步；fem 为 False 时 mu1D2 取夹逼区间中点"""
    index: int
    aperture: float
    mu1D2: float
    error_estimate: float
    lower: float
    upper: float
    fem: bool = True
    decreasing: Optional[bool] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "index": self.index,
            "aperture": self.aperture,
            "mu1D2": self.mu1D2,
            "error_estimate": self.error_estimate,
            "lower": self.lower,
            "upper": self.upper,
            "fem": self.fem,
            "decreasing": self.decreasing,
        }


@dataclass
class ChainResult:
    steps: List[ChainStep] = field(default_factory=list)
    stopped_at: Optional[int] = None

    @property
    def monotone(self) -> bool:
        return all(s.decreasing is not False for s in self.steps)

    @property
    def final(self) -> ChainStep:
        return self.steps[-1]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "monotone": self.monotone,
            "stopped_at": self.stopped_at,
            "steps": [s.to_dict() for s in self.steps],
        }


def chain_apertures(alpha0: float, steps: int) -> List[float]:
    """α₀, α₁, …, α_steps"""
    if not (0 <= steps <= MAX_STEPS):
        raise DomainError(f"步数必须在 [0, {MAX_STEPS}] 内: {steps}")
    apertures = [alpha0]
    for _ in range(steps):
        apertures.append(bisect_stretch_step(apertures[-1]))
    return apertures


def bisect_stretch_chain(alpha0: float, steps: int, budget: Optional[str] = None,
                         settings: Optional[LabSettings] = None) -> ChainResult:
    """
    计算对分拉伸链上每个孔径的 μ₁D²（腰长 1，D = 1）

    Args:
        alpha0: 起始孔径，0 < α₀ ≤ π/3
        steps: 对分拉伸的次数
        budget: 网格预算
        settings: 配置

    Returns:
        ChainResult: 各步结果；相邻两个有限元值之差不超过合并容差时仍视为下降
    """
    if not (0.0 < alpha0 <= math.pi / 3 + APERTURE_EDGE_TOL):
        raise ApertureRangeError(f"起始孔径必须在 (0, π/3] 内: {alpha0}")
    settings = settings or get_settings()
    apertures = chain_apertures(alpha0, steps)
    floor = settings.fem_aperture_floor

    solvable = [a for a in apertures if a >= floor]
    tones = ordered_map(lambda a: extrapolate_tone(IsoscelesSpec(a, 1.0), settings=settings, budget=budget),
                        solvable, settings=settings)

    result = ChainResult()
    for i, a in enumerate(apertures):
        sandwich = boundsiso_sandwich(a, 1.0)
        if i < len(tones):
            tone = tones[i]
            step = ChainStep(index=i, aperture=a, mu1D2=tone.value, error_estimate=tone.error_estimate,
                             lower=sandwich["lower"], upper=sandwich["upper"])
        else:
            if result.stopped_at is None:
                result.stopped_at = i
                logger.warning(f"第 {i} 步孔径 {a:.3e} 低于有限元下限 {floor}，其余各步只报告夹逼区间")
            step = ChainStep(index=i, aperture=a, mu1D2=0.5 * (sandwich["lower"] + sandwich["upper"]),
                             error_estimate=0.5 * (sandwich["upper"] - sandwich["lower"]),
                             lower=sandwich["lower"], upper=sandwich["upper"], fem=False)

        if i > 0 and step.fem:
            prev = result.steps[-1]
            slack = settings.slack_factor * (prev.error_estimate + step.error_estimate)
            step.decreasing = step.mu1D2 < prev.mu1D2 + slack
            if not step.decreasing:
                logger.error(f"链在第 {i} 步没有下降: {prev.mu1D2:.8f} → {step.mu1D2:.8f}")
        result.steps.append(step)

    final = result.final
    logger.info(f"对分拉伸链 {steps} 步: 末值 {final.mu1D2:.6f}（j11² = {J11 ** 2:.6f}）")
    return result
