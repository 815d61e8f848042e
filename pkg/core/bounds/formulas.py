"""
闭式特征值界

核心功能：
- 直径型：π²/D²（凸域一般下界）、j11²/D²（三角形下界）、4j01²/D²（Cheng 上界）
- 周长型：4j11²/L²（三角形）、4π²/L²（一般凸域）
- 边长平方和上界 16π²/(3S²)
- 等腰三角形：亚等边夹逼区间、超等边的 1D 区间界及其改进下界
- 对称 / 反对称类的辅助界与移植比较用到的 G 函数

所有函数都是纯函数，输入为 Triangle / IsoscelesSpec 或孔径 + 腰长。
"""

import logging
import math
from typing import Dict

from core.errors import ApertureRangeError, DomainError
from core.geometry.triangle import Shape, derived_scalars
from core.special_fn import J01, J11

logger = logging.getLogger(__name__)

PI2 = math.pi ** 2
EQUILATERAL_TONE = 16.0 * PI2 / 9.0
# π/3 处允许的舍入
APERTURE_EDGE_TOL = 1e-12


def _check_leg(l: float) -> None:
    if not (l > 0.0 and math.isfinite(l)):
        raise DomainError(f"腰长必须为正: {l}")


# ---------------------------------------------------------------------------
# 任意三角形
# ---------------------------------------------------------------------------

def pw_diameter_lower(t: Shape) -> float:
    """凸域的一般下界 π²/D²"""
    return PI2 / derived_scalars(t).D ** 2


def thm_diameter_lower(t: Shape) -> float:
    """三角形的最优直径下界 j11²/D²"""
    return J11 ** 2 / derived_scalars(t).D ** 2


def perimeter_lower(t: Shape) -> float:
    """三角形的周长下界 4j11²/L²"""
    return 4.0 * J11 ** 2 / derived_scalars(t).L ** 2


def convex_perimeter_lower(t: Shape) -> float:
    """一般凸域的周长下界 4π²/L²"""
    return 4.0 * PI2 / derived_scalars(t).L ** 2


def cheng_upper(t: Shape) -> float:
    """Cheng 上界 4j01²/D²"""
    return 4.0 * J01 ** 2 / derived_scalars(t).D ** 2


def sum_of_squares_upper(t: Shape) -> float:
    """
    16π²/(3S²)，S² 为三边长平方和

    等边三角形取等号；对 T(β, 1) 化为 16π²/(12 sin²(β/2) + 6)。
    """
    return 16.0 * PI2 / (3.0 * derived_scalars(t).S2)


# ---------------------------------------------------------------------------
# 等腰三角形
# ---------------------------------------------------------------------------

def boundsiso_sandwich(alpha: float, l: float = 1.0) -> Dict[str, float]:
    """
    亚等边三角形 T(α) 的夹逼区间（D = l）

    Args:
        alpha: 孔径，0 < α ≤ π/3
        l: 腰长

    Returns:
        dict: lower = j11²/(D²(1 + tan(α/2) + tan²(α/2)))，upper = j11²/(D² cos²(α/2))

    Raises:
        ApertureRangeError: 孔径超出 (0, π/3]
    """
    if not (0.0 < alpha <= math.pi / 3 + APERTURE_EDGE_TOL):
        raise ApertureRangeError(f"夹逼区间只适用于 0 < α ≤ π/3: {alpha}")
    _check_leg(l)
    t = math.tan(alpha / 2)
    base = J11 ** 2 / l ** 2
    return {
        "lower": base / (1.0 + t + t * t),
        "upper": base / math.cos(alpha / 2) ** 2,
    }


def prop1d_bounds(alpha: float, l: float = 1.0) -> Dict[str, float]:
    """
    超等边三角形 T(α) 的区间界，D = 2l sin(α/2)

    Args:
        alpha: 孔径，π/3 < α < π
        l: 腰长

    Returns:
        dict: lower = 4j01² sin²(α/2)/D²，improved_lower = 2j01²(π−α)tan(α/2)/D²，
            upper = 4j01²/D²
    """
    if not (math.pi / 3 < alpha < math.pi):
        raise ApertureRangeError(f"区间界只适用于 π/3 < α < π: {alpha}")
    _check_leg(l)
    d2 = (2.0 * l * math.sin(alpha / 2)) ** 2
    return {
        "lower": 4.0 * J01 ** 2 * math.sin(alpha / 2) ** 2 / d2,
        "improved_lower": 2.0 * J01 ** 2 * (math.pi - alpha) * math.tan(alpha / 2) / d2,
        "upper": 4.0 * J01 ** 2 / d2,
    }


def antisym_interval_lower(beta: float, l: float = 1.0) -> float:
    """
    μ_a(β) ≥ π²/(l² sin²(β/2))

    只在 ∫v_x² ≥ 3∫v_y² 的情形下成立（逐条竖线上的区间 Neumann 基频），
    调用方负责记录该前提。
    """
    if not (0.0 < beta <= math.pi / 3 + APERTURE_EDGE_TOL):
        raise ApertureRangeError(f"反对称区间界只适用于 0 < β ≤ π/3: {beta}")
    _check_leg(l)
    return PI2 / (l * math.sin(beta / 2)) ** 2


def symmetric_half_lower(beta: float, l: float = 1.0) -> float:
    """μ_s(β) ≥ μ₁(半三角形) > j11²/l²（半三角形的直径为 l）"""
    if not (0.0 < beta < math.pi):
        raise ApertureRangeError(f"孔径必须在 (0, π) 内: {beta}")
    _check_leg(l)
    return J11 ** 2 / l ** 2


def symmetric_rewrite_lower(beta: float, l: float = 1.0) -> float:
    """π/3 < β < π/2 时 μ_s(β) > 16π²/((12 sin²(β/2) + 6) l²)"""
    if not (math.pi / 3 < beta < math.pi / 2):
        raise ApertureRangeError(f"需要 π/3 < β < π/2: {beta}")
    _check_leg(l)
    return 16.0 * PI2 / ((12.0 * math.sin(beta / 2) ** 2 + 6.0) * l * l)


def cheng_antisymmetry_threshold() -> float:
    """sin²(β/2) 不小于 j01²/j11² ≈ 0.39 时，Cheng 上界低于 μ_s 的下界"""
    return J01 ** 2 / J11 ** 2


def cheng_implies_antisymmetric(beta: float) -> bool:
    """超等边 T(β) 是否落在 Cheng 上界直接排除对称基本模态的范围"""
    if not (0.0 < beta < math.pi):
        raise ApertureRangeError(f"孔径必须在 (0, π) 内: {beta}")
    return math.sin(beta / 2) ** 2 >= cheng_antisymmetry_threshold()


def g_equilateral(beta: float) -> float:
    """以等边三角形为端点时的 G(β) = (4 sin²(β/2) − 1)/3"""
    return (4.0 * math.sin(beta / 2) ** 2 - 1.0) / 3.0


def g_right_isosceles(beta: float) -> float:
    """以直角等腰三角形为端点时的 G(β) = (6 sin²(β/2) − 1)/4"""
    return (6.0 * math.sin(beta / 2) ** 2 - 1.0) / 4.0


def transplant_threshold(alpha: float, beta: float, G: float = 0.0) -> float:
    """
    移植比较的 κ 阈值

        sin²(α/2) + sin²(α/2) cos²(α/2) / (sin²(β/2) − sin²(α/2)) · G

    Raises:
        DomainError: α = β 时分母为零
    """
    sa2, sb2 = math.sin(alpha / 2) ** 2, math.sin(beta / 2) ** 2
    gap = sb2 - sa2
    if gap == 0.0 or alpha == beta:
        raise DomainError(f"α 与 β 不能相等: {alpha}")
    return sa2 + sa2 * (1.0 - sa2) / gap * G


def transplant_factor(alpha: float, beta: float, kappa: float) -> float:
    """R[w∘τ] / R[w] = cos²(β/2)/cos²(α/2) (1 − κ) + sin²(β/2)/sin²(α/2) κ"""
    ca2, sa2 = math.cos(alpha / 2) ** 2, math.sin(alpha / 2) ** 2
    cb2, sb2 = math.cos(beta / 2) ** 2, math.sin(beta / 2) ** 2
    return cb2 / ca2 * (1.0 - kappa) + sb2 / sa2 * kappa


# 反对称类阈值：tan²(π/6) = 1/3
ANTISYMMETRIC_RATIO_THRESHOLD = 1.0 / 3.0
# 对称类阈值：∫u2x² / ∫u2y²
SYMMETRIC_RATIO_THRESHOLD = (32.0 * PI2 - 243.0) / (32.0 * PI2 + 243.0)
# 夹逼上界足以给出 μ₁ < 16π²/9 的范围：tan²(α/2) < 16π²/(9 j11²) − 1
SANDWICH_TAN2_LIMIT = EQUILATERAL_TONE / J11 ** 2 - 1.0
