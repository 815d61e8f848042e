"""
移植比较

把 T(β) 上的离散本征函数 w 经对角映射 τ: T(α) → T(β) 拉回到 T(α)，
用 κ = ∫w_y² / ∫|∇w|² 判断 μ(α) < (1 + G(β)) μ(β) 的条件是否成立：
- 情形 (i)  α < β 且 κ < 阈值
- 情形 (ii) α > β 且 κ > 阈值
阈值 = sin²(α/2) + sin²(α/2) cos²(α/2) / (sin²(β/2) − sin²(α/2)) · G(β)。

w∘τ 能否作为 μ(α) 的试探函数（均值为零、对称类一致）由调用方保证，
trial_class 字段记录调用方声明的对称类。
"""

import logging
import math
from dataclasses import replace
from typing import Dict, Optional, Tuple, Union

import numpy as np

from core.bounds.formulas import (
    ANTISYMMETRIC_RATIO_THRESHOLD,
    EQUILATERAL_TONE,
    antisym_interval_lower,
    g_equilateral,
    g_right_isosceles,
    symmetric_rewrite_lower,
    transplant_factor,
    transplant_threshold,
)
from core.bounds.schema import TransplantVerdict
from core.closed_form import RIGHT_ISOSCELES_EIGENVALUE, transplanted_sector_function
from core.errors import DomainError, MeshCompatibilityError
from core.fem.assembly import gradient_integrals
from core.fem.extrapolation import extrapolate_tone
from core.fem.mesh import Mesh, isosceles_mesh
from core.fem.rayleigh import rayleigh_quotient_of
from core.fem.schema import EigenSolution
from core.geometry.maps import tau_map
from core.geometry.triangle import IsoscelesSpec
from core.settings import LabSettings

logger = logging.getLogger(__name__)

DiscreteFunction = Union[EigenSolution, Tuple[Mesh, np.ndarray]]

# 网格面积与 T(β) 面积的相对容差
AREA_TOL = 1e-9


def _unpack(w: DiscreteFunction) -> Tuple[Mesh, np.ndarray]:
    if isinstance(w, EigenSolution):
        if w.mesh is None:
            raise MeshCompatibilityError("EigenSolution 没有附带网格")
        return w.mesh, np.asarray(w.coefficients, dtype=float)
    mesh, values = w
    values = np.asarray(values, dtype=float)
    if values.shape != (mesh.vertex_count,):
        raise MeshCompatibilityError(f"节点值个数 {values.shape} 与顶点数 {mesh.vertex_count} 不符")
    return mesh, values


def _check_mesh_fits(mesh: Mesh, beta: float, leg: float) -> None:
    expected = IsoscelesSpec(beta, leg).to_triangle().area
    if abs(mesh.total_area() - expected) > AREA_TOL * expected:
        raise MeshCompatibilityError(
            f"网格面积 {mesh.total_area():.12f} 与 T({beta:.6f}) 面积 {expected:.12f} 不符"
        )


def transplanted_mesh(mesh: Mesh, alpha: float, beta: float) -> Mesh:
    """T(β) 上的网格经 τ⁻¹ 映射为 T(α) 上的网格，节点编号不变"""
    inverse = tau_map(alpha, beta).inverse()
    vertices = inverse.apply(mesh.vertices)
    scale = abs(inverse.determinant)
    return replace(mesh, vertices=vertices, source_area=mesh.source_area * scale)


def gradient_split(w: DiscreteFunction) -> Dict[str, float]:
    """∫w_x²、∫w_y²、κ 与 ∫w_y²/∫w_x²"""
    mesh, values = _unpack(w)
    wx2, wy2 = gradient_integrals(mesh, values)
    total = wx2 + wy2
    if total <= 0.0:
        raise DomainError("w 为常数，无法移植")
    return {
        "wx2": wx2,
        "wy2": wy2,
        "kappa": wy2 / total,
        "ratio": wy2 / wx2 if wx2 > 0.0 else math.inf,
    }


def lemcomp_check(alpha: float, beta: float, w: DiscreteFunction, mu_beta: float,
                  G: float, mu_alpha: Optional[float] = None, leg: float = 1.0,
                  trial_class: Optional[str] = None, confirm: bool = True,
                  settings: Optional[LabSettings] = None,
                  budget: Optional[str] = None) -> TransplantVerdict:
    """
    带 G(β) 的移植比较

    Args:
        alpha: 目标孔径
        beta: w 所在三角形的孔径
        w: T(β, leg) 上的离散本征函数（EigenSolution 或 (mesh, values)）
        mu_beta: w 对应的特征值
        G: G(β)
        mu_alpha: 已知的 μ(α)；为 None 且条件成立、confirm 为 True 时用有限元外推计算
        leg: 腰长
        trial_class: w∘τ 所试探的对称类（None 表示 μ₁）
        confirm: 条件成立时是否做数值确认
        settings: 配置
        budget: 有限元预算

    Returns:
        TransplantVerdict: κ、阈值、条件是否成立、蕴含关系及数值确认

    Raises:
        DomainError: α = β
    """
    if alpha == beta:
        raise DomainError(f"α 与 β 不能相等: {alpha}")
    mesh, values = _unpack(w)
    _check_mesh_fits(mesh, beta, leg)

    split = gradient_split((mesh, values))
    kappa = split["kappa"]
    threshold = transplant_threshold(alpha, beta, G)
    case = "i" if alpha < beta else "ii"
    condition_met = kappa < threshold if case == "i" else kappa > threshold

    factor = transplant_factor(alpha, beta, kappa)
    identity_holds = factor < 1.0 + G
    if condition_met and not identity_holds:
        logger.warning(f"条件 ({case}) 成立但比较不等式不成立: factor={factor:.12f}, 1+G={1.0 + G:.12f}")

    transplanted_q = rayleigh_quotient_of(transplanted_mesh(mesh, alpha, beta), values)
    rhs = (1.0 + G) * mu_beta
    implied = {"relation": "strict-less", "lhs": f"mu({alpha:.6f})", "rhs": rhs}

    confirmed = False
    if condition_met and confirm:
        if mu_alpha is None:
            tone = extrapolate_tone(IsoscelesSpec(alpha, leg), symmetry_class=trial_class,
                                    settings=settings, budget=budget)
            mu_alpha = tone.value
        confirmed = mu_alpha < rhs
        if not confirmed:
            logger.error(f"移植结论不成立: μ(α)={mu_alpha:.8f} ≥ (1+G)μ(β)={rhs:.8f}")

    logger.info(f"移植 α={alpha:.4f} β={beta:.4f}: κ={kappa:.6f}, 阈值={threshold:.6f}, "
                f"情形 ({case}) {'成立' if condition_met else '不成立'}")
    return TransplantVerdict(
        alpha=alpha, beta=beta, kappa=kappa, G=G, threshold=threshold, case=case,
        condition_met=condition_met, implied=implied, ratio=split["ratio"], factor=factor,
        identity_holds=identity_holds, transplanted_quotient=transplanted_q,
        mu_alpha=mu_alpha, numerically_confirmed=confirmed, trial_class=trial_class,
    )


def corcomp_check(alpha: float, beta: float, w: DiscreteFunction, mu_beta: float,
                  mu_alpha: Optional[float] = None, leg: float = 1.0,
                  trial_class: Optional[str] = None, confirm: bool = True,
                  settings: Optional[LabSettings] = None,
                  budget: Optional[str] = None) -> TransplantVerdict:
    """
    G = 0 的移植比较：μ(α) < μ(β)

    条件等价于 ∫w_y²/∫w_x² 与 tan²(α/2) 比较（(i) 小于，(ii) 大于），
    判定本身复用 lemcomp_check，两者在相同输入下给出相同结论。
    """
    verdict = lemcomp_check(alpha, beta, w, mu_beta, 0.0, mu_alpha=mu_alpha, leg=leg,
                            trial_class=trial_class, confirm=confirm,
                            settings=settings, budget=budget)
    tan2 = math.tan(alpha / 2) ** 2
    by_ratio = verdict.ratio < tan2 if verdict.case == "i" else verdict.ratio > tan2
    if by_ratio != verdict.condition_met:
        logger.debug(f"比值判定与 κ 判定在舍入边界上不一致: ratio={verdict.ratio!r}, tan²={tan2!r}")
    return verdict


def symmetric_case_split(beta: float, w: DiscreteFunction, mu_s_beta: float,
                         leg: float = 1.0) -> Dict[str, object]:
    """
    π/3 < β < π/2 时对称类的两种端点比较

    κ < 1/2：以等边三角形为端点（α = π/3，情形 (i)，G = (4 sin²(β/2) − 1)/3，阈值恰为 1/2）；
    κ ≥ 1/2：以直角等腰三角形为端点（α = π/2，情形 (ii)，G = (6 sin²(β/2) − 1)/4）。
    两种情形都得出 μ_s(β) > 16π²/((12 sin²(β/2) + 6) l²)。

    Returns:
        dict: endpoint、verdict、rewrite_lower 以及数值上的 μ_s(β) 是否高于该下界
    """
    if not (math.pi / 3 < beta < math.pi / 2):
        raise DomainError(f"对称类的端点比较需要 π/3 < β < π/2: {beta}")
    kappa = gradient_split(w)["kappa"]
    if kappa < 0.5:
        endpoint, alpha, G = "equilateral", math.pi / 3, g_equilateral(beta)
        mu_alpha = EQUILATERAL_TONE / leg ** 2
    else:
        endpoint, alpha, G = "right_isosceles", math.pi / 2, g_right_isosceles(beta)
        mu_alpha = RIGHT_ISOSCELES_EIGENVALUE / leg ** 2

    verdict = lemcomp_check(alpha, beta, w, mu_s_beta, G, mu_alpha=mu_alpha, leg=leg,
                            trial_class="symmetric")
    rewrite = symmetric_rewrite_lower(beta, leg)
    return {
        "endpoint": endpoint,
        "verdict": verdict,
        "rewrite_lower": rewrite,
        "mu_s_above_rewrite": mu_s_beta > rewrite,
    }


def antisymmetric_case_split(beta: float, v: DiscreteFunction, mu_a_beta: float,
                             leg: float = 1.0) -> Dict[str, object]:
    """
    亚等边 T(β) 的反对称类：两种情形都得出 μ_a(β) > 16π²/(9 l²)

    ∫v_y²/∫v_x² > 1/3 时用 α = π/3 的移植比较（情形 (ii)）；
    否则区间界 π²/(l² sin²(β/2)) 的前提成立。

    Returns:
        dict: case（"transplant" / "interval"）、ratio、verdict 或 interval_lower、implied_lower
    """
    if not (0.0 < beta < math.pi / 3):
        raise DomainError(f"反对称类的情形划分需要 0 < β < π/3: {beta}")
    ratio = gradient_split(v)["ratio"]
    result: Dict[str, object] = {"ratio": ratio, "implied_lower": EQUILATERAL_TONE / leg ** 2}
    if ratio > ANTISYMMETRIC_RATIO_THRESHOLD:
        result["case"] = "transplant"
        result["verdict"] = corcomp_check(math.pi / 3, beta, v, mu_a_beta,
                                          mu_alpha=EQUILATERAL_TONE / leg ** 2, leg=leg)
    else:
        result["case"] = "interval"
        result["interval_lower"] = antisym_interval_lower(beta, leg)
    result["holds"] = mu_a_beta > result["implied_lower"]
    return result


def transplanted_sector_quotient(alpha: float, l: float = 1.0, n: int = 32) -> Dict[str, float]:
    """
    扇形模态经 σ⁻¹ 移植到 T(α) 后的 Rayleigh 商

    Returns:
        dict: closed_form = j11²/(l² cos²(α/2))，fem = 插值到 n 层网格上的离散 Rayleigh 商，
        quadrature / quadrature_error = 数值积分的商及其误差估计
    """
    mode = transplanted_sector_function(alpha, l)
    mesh = isosceles_mesh(IsoscelesSpec(alpha, l), n)
    quadrature, quadrature_error = mode.rayleigh_with_estimate()
    return {
        "closed_form": mode.eigenvalue,
        "fem": rayleigh_quotient_of(mesh, mode),
        "quadrature": quadrature,
        "quadrature_error": quadrature_error,
    }
