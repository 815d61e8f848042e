"""
不等式链审计

对任意三角形：
1. 外推 μ₁（等腰输入同时外推 μ_s、μ_a）
2. 计算全部适用的闭式界并与有限元值比较
3. 检查 π²/D² < j11²/D² < μ₁ < 4j01²/D² 与 μ₁L² > 4j11²
4. 等腰输入检查基本模态的对称性：亚等边为对称，超等边为反对称（π/3 本身除外）

容差约定：违反量不超过 slack_factor × 外推误差估计记为警告，超出记为失败。
孔径低于有限元下限时 μ₁ 只有闭式区间 [lower, upper]，界与区间不矛盾即视为成立。
"""

import logging
import math
from typing import Callable, List, Optional, Tuple

import numpy as np

from core.bounds import formulas
from core.bounds.schema import BoundEntry, BoundKind, BoundReport, BoundStatus
from core.bounds.transplant import gradient_split
from core.errors import DomainError
from core.fem.extrapolation import extrapolate_tone
from core.fem.parallel import ordered_map
from core.fem.schema import ExtrapolatedTone
from core.fem.symmetry import symmetry_reduced_tone
from core.geometry.triangle import (
    IsoscelesSpec,
    Shape,
    Triangle,
    as_triangle,
    classify,
    derived_scalars,
    isosceles_spec_of,
    unit_equilateral,
)
from core.settings import LabSettings, get_settings

logger = logging.getLogger(__name__)

# 随机三角形的最大角范围
RANDOM_APEX_RANGE = (0.1, 3.0)
# 对称性判定排除的 π/3 邻域
TRANSITION_EXCLUSION = 1e-9


def _interval(tone: ExtrapolatedTone) -> Tuple[float, float, float]:
    """(下端, 上端, 容差)"""
    if tone.fallback is not None:
        return tone.fallback["lower"], tone.fallback["upper"], 0.0
    return tone.value, tone.value, tone.error_estimate


def judge(name: str, kind: BoundKind, value: float, tone: ExtrapolatedTone,
          slack_factor: float, target: str = "mu1", applicable: bool = True,
          conditional: bool = False, note: str = "") -> BoundEntry:
    """
    比较一条界与外推值

    Returns:
        BoundEntry: margin > 0 为严格成立；−slack ≤ margin ≤ 0 为容差内；更小为违反
    """
    lo, hi, err = _interval(tone)
    margin = hi - value if kind == BoundKind.LOWER else value - lo
    slack = slack_factor * err
    if not applicable:
        status = BoundStatus.SKIPPED
    elif margin > 0.0:
        status = BoundStatus.OK
    elif margin >= -slack:
        status = BoundStatus.WITHIN_SLACK
    else:
        status = BoundStatus.VIOLATED

    entry = BoundEntry(
        name=name, kind=kind, value=value, applicable=applicable,
        satisfied=status != BoundStatus.VIOLATED, margin=margin, status=status,
        target=target, conditional=conditional, note=note,
    )
    if status == BoundStatus.WITHIN_SLACK:
        logger.warning(f"{name} 在容差内被违反: margin={margin:.3e}, slack={slack:.3e}")
    elif status == BoundStatus.VIOLATED:
        logger.error(f"{name} 被违反: value={value:.10f}, margin={margin:.3e}, slack={slack:.3e}")
    return entry


def general_entries(t: Shape, mu1: ExtrapolatedTone, slack_factor: float) -> List[BoundEntry]:
    """对任意三角形都适用的界"""
    lower, upper = BoundKind.LOWER, BoundKind.UPPER
    return [
        judge("pw_diameter_lower", lower, formulas.pw_diameter_lower(t), mu1, slack_factor),
        judge("thm_diameter_lower", lower, formulas.thm_diameter_lower(t), mu1, slack_factor),
        judge("perimeter_lower", lower, formulas.perimeter_lower(t), mu1, slack_factor),
        judge("convex_perimeter_lower", lower, formulas.convex_perimeter_lower(t), mu1, slack_factor),
        judge("cheng_upper", upper, formulas.cheng_upper(t), mu1, slack_factor),
        judge("sum_of_squares_upper", upper, formulas.sum_of_squares_upper(t), mu1, slack_factor),
    ]


def isosceles_entries(spec: IsoscelesSpec, mu1: ExtrapolatedTone,
                      mu_s: Optional[ExtrapolatedTone], mu_a: Optional[ExtrapolatedTone],
                      slack_factor: float, antisym_ratio: Optional[float] = None) -> List[BoundEntry]:
    """
    等腰三角形的专用界

    antisym_ratio 为离散反对称模态的 ∫v_y²/∫v_x²，用于判断区间界的前提 ∫v_x² ≥ 3∫v_y²。
    """
    alpha, l = spec.aperture, spec.leg
    lower, upper = BoundKind.LOWER, BoundKind.UPPER
    entries: List[BoundEntry] = []

    if alpha <= math.pi / 3 + formulas.APERTURE_EDGE_TOL:
        sandwich = formulas.boundsiso_sandwich(alpha, l)
        entries.append(judge("boundsiso_lower", lower, sandwich["lower"], mu1, slack_factor))
        entries.append(judge("boundsiso_upper", upper, sandwich["upper"], mu1, slack_factor))
        if mu_a is not None and alpha < math.pi / 3 - TRANSITION_EXCLUSION:
            entries.append(judge("antisym_equilateral_lower", lower,
                                 formulas.EQUILATERAL_TONE / l ** 2, mu_a, slack_factor, target="mu_a"))
            applicable = antisym_ratio is not None and antisym_ratio <= formulas.ANTISYMMETRIC_RATIO_THRESHOLD
            entries.append(judge("antisym_interval_lower", lower,
                                 formulas.antisym_interval_lower(alpha, l), mu_a, slack_factor,
                                 target="mu_a", applicable=applicable, conditional=True,
                                 note="需要 ∫v_x² ≥ 3∫v_y²"))
    else:
        bounds = formulas.prop1d_bounds(alpha, l)
        entries.append(judge("prop1d_lower", lower, bounds["lower"], mu1, slack_factor))
        entries.append(judge("prop1d_improved_lower", lower, bounds["improved_lower"], mu1, slack_factor))
        entries.append(judge("prop1d_upper", upper, bounds["upper"], mu1, slack_factor))
        if mu_s is not None:
            entries.append(judge("symmetric_half_lower", lower,
                                 formulas.symmetric_half_lower(alpha, l), mu_s, slack_factor,
                                 target="mu_s"))
            if alpha < math.pi / 2:
                entries.append(judge("symmetric_rewrite_lower", lower,
                                     formulas.symmetric_rewrite_lower(alpha, l), mu_s, slack_factor,
                                     target="mu_s"))
    return entries


def _fundamental_symmetry(mu_s: ExtrapolatedTone, mu_a: ExtrapolatedTone) -> str:
    s_lo, s_hi, _ = _interval(mu_s)
    a_lo, a_hi, _ = _interval(mu_a)
    if s_hi < a_lo:
        return "symmetric"
    if a_hi < s_lo:
        return "antisymmetric"
    return "none"


def audit(t: Shape, budget: Optional[str] = None, settings: Optional[LabSettings] = None,
          check_symmetry: bool = True, threads: Optional[int] = None) -> BoundReport:
    """
    审计一个三角形

    Args:
        t: Triangle 或 IsoscelesSpec
        budget: 网格预算名
        settings: 配置
        check_symmetry: 等腰输入是否计算 μ_s、μ_a 并检查对称性转变
        threads: 本三角形各次求解的线程数，None 时取配置

    Returns:
        BoundReport: chain_ok 为全部适用界成立且对称性符合预期
    """
    settings = settings or get_settings()
    triangle = as_triangle(t)
    spec = t if isinstance(t, IsoscelesSpec) else isosceles_spec_of(triangle)
    solve_shape: Shape = spec if spec is not None else triangle
    scalars = derived_scalars(triangle)

    tasks: List[Callable[[], ExtrapolatedTone]] = [
        lambda: extrapolate_tone(solve_shape, settings=settings, budget=budget)
    ]
    with_classes = spec is not None and check_symmetry
    if with_classes:
        tasks.append(lambda: extrapolate_tone(spec, symmetry_class="symmetric",
                                              settings=settings, budget=budget))
        tasks.append(lambda: extrapolate_tone(spec, symmetry_class="antisymmetric",
                                              settings=settings, budget=budget))
    tones = ordered_map(lambda task: task(), tasks, threads=threads, settings=settings)
    mu1 = tones[0]
    mu_s = tones[1] if with_classes else None
    mu_a = tones[2] if with_classes else None

    entries = general_entries(triangle, mu1, settings.slack_factor)
    report = BoundReport(
        triangle=triangle, mu1_computed=mu1, diameter=scalars.D, perimeter=scalars.L,
        triangle_class=classify(triangle).value,
    )

    if spec is not None:
        report.aperture = spec.aperture
        ratio = None
        if with_classes and spec.aperture < math.pi / 3 - TRANSITION_EXCLUSION:
            level = settings.levels_for(budget)[-2]
            v = symmetry_reduced_tone(spec, level, "antisymmetric", settings)
            ratio = gradient_split(v)["ratio"]
        entries.extend(isosceles_entries(spec, mu1, mu_s, mu_a, settings.slack_factor, ratio))
        report.mu_s, report.mu_a = mu_s, mu_a

        if with_classes and abs(spec.aperture - math.pi / 3) > TRANSITION_EXCLUSION:
            report.fundamental_symmetry = _fundamental_symmetry(mu_s, mu_a)
            report.expected_symmetry = "symmetric" if spec.aperture < math.pi / 3 else "antisymmetric"
            report.symmetry_ok = report.fundamental_symmetry == report.expected_symmetry
            if not report.symmetry_ok:
                logger.error(f"T({spec.aperture:.6f}) 基本模态对称性为 {report.fundamental_symmetry}，"
                             f"期望 {report.expected_symmetry}")

    report.entries = entries
    level = logging.INFO if report.chain_ok else logging.ERROR
    logger.log(level, f"审计完成: μ₁D²={report.mu1_d2:.6f}, chain_ok={report.chain_ok}")
    return report


def random_triangle(rng: np.random.Generator) -> Triangle:
    """
    随机非退化三角形

    最大角在 [0.1, 3.0] 内均匀取值，其余两角按 [0.2, 0.8] 的比例分配剩余角度，
    再做随机缩放（[0.5, 2]）、旋转和平移。
    """
    apex = rng.uniform(*RANDOM_APEX_RANGE)
    share = rng.uniform(0.2, 0.8)
    a = (math.pi - apex) * share
    b = math.pi - apex - a
    # 顶点 P0、P1 处的角为 a、b，P2 处为 apex；|P0P1| = 1
    side = math.sin(b) / math.sin(apex)
    points = np.array([[0.0, 0.0], [1.0, 0.0], [side * math.cos(a), side * math.sin(a)]])
    scale = rng.uniform(0.5, 2.0)
    theta = rng.uniform(0.0, 2.0 * math.pi)
    rotation = np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])
    shift = rng.uniform(-1.0, 1.0, size=2)
    moved = scale * points @ rotation.T + shift
    return Triangle(tuple((float(x), float(y)) for x, y in moved))


def stress_set() -> List[Tuple[str, Shape]]:
    """固定的压力测试集：近退化的锐角 / 钝角等腰、直角等腰、等边"""
    return [
        ("acute_floor", IsoscelesSpec(0.05, 1.0)),
        ("acute_below_floor", IsoscelesSpec(0.03, 1.0)),
        ("obtuse_near_degenerate", IsoscelesSpec(3.0, 1.0)),
        ("right_isosceles", IsoscelesSpec(math.pi / 2, 1.0)),
        ("equilateral", unit_equilateral()),
    ]


def audit_batch(count: int, seed: int, budget: Optional[str] = None,
                settings: Optional[LabSettings] = None,
                include_stress: bool = True) -> List[Tuple[str, BoundReport]]:
    """
    审计 count 个随机三角形（以及压力测试集）

    Returns:
        List[Tuple[str, BoundReport]]: (标签, 报告)，顺序固定
    """
    if count < 0:
        raise DomainError(f"count 不能为负: {count}")
    rng = np.random.default_rng(seed)
    cases: List[Tuple[str, Shape]] = [(f"random_{i:03d}", random_triangle(rng)) for i in range(count)]
    if include_stress:
        cases.extend(stress_set())

    def _audit_case(case: Tuple[str, Shape]) -> Tuple[str, BoundReport]:
        label, shape = case
        logger.info(f"审计 {label}")
        # 并发在三角形之间展开，单个三角形内部串行
        return label, audit(shape, budget=budget, settings=settings, threads=1)

    return ordered_map(_audit_case, cases, settings=settings)
