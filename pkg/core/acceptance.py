"""
验收检查

selftest 子命令运行这里的 12 项检查，任一失败即返回非零状态：
1. Bessel 常数                 7. 亚等边夹逼区间
2. 等边三角形基准              8. 超等边区间界
3. 亚等边族回归                9. 对分拉伸链
4. 超等边族回归               10. 移植比较
5. 随机三角形的不等式链       11. 离散 Rayleigh 原理
6. 对称性转变                 12. 收敛阶
"""

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional

import numpy as np

from core.bounds import (
    audit_batch,
    bisect_stretch_chain,
    boundsiso_sandwich,
    corcomp_check,
    g_equilateral,
    prop1d_bounds,
    symmetric_case_split,
    transplant_threshold,
)
from core.bounds.formulas import EQUILATERAL_TONE, SYMMETRIC_RATIO_THRESHOLD
from core.bounds.transplant import gradient_split
from core.closed_form import equilateral_integrals, equilateral_integrals_by_quadrature
from core.errors import DomainError
from core.fem import extrapolate_tone, neumann_spectrum, rayleigh_quotient_of, symmetry_reduced_tone
from core.fem.mesh import isosceles_mesh
from core.figures import (
    FIGURE_SUBEQUILATERAL,
    FIGURE_SUPEREQUILATERAL,
    compare_with_reference,
    limit_approach,
    solve_aperture,
)
from core.geometry import IsoscelesSpec, bisect_stretch_step
from core.settings import LabSettings, get_settings
from core.special_fn import J01, J11, bessel_j_zero, bessel_jprime_zero, jprime_crossing

logger = logging.getLogger(__name__)

FIGURE_FAIL_TOLERANCE = 0.01


@dataclass
class AcceptanceResult:
    """一项检查的结果"""
    number: int
    title: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)
    seconds: float = 0.0
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "number": self.number,
            "title": self.title,
            "passed": self.passed,
            "details": self.details,
            "seconds": round(self.seconds, 3),
            "error": self.error,
        }


class AcceptanceContext:
    """检查共享的配置"""

    def __init__(self, settings: Optional[LabSettings] = None, budget: Optional[str] = None,
                 audit_count: int = 200, audit_seed: int = 2009):
        self.settings = settings or get_settings()
        self.budget = budget
        self.audit_count = audit_count
        self.audit_seed = audit_seed

    def tone(self, aperture: float, symmetry_class: Optional[str] = None, levels=None):
        return extrapolate_tone(IsoscelesSpec(aperture, 1.0), levels=levels, symmetry_class=symmetry_class,
                                settings=self.settings, budget=self.budget)

    def slack(self, tone) -> float:
        return self.settings.slack_factor * tone.error_estimate


def check_bessel(ctx: AcceptanceContext) -> Dict[str, Any]:
    values = {
        "j01": bessel_j_zero(0, 1),
        "j11": bessel_j_zero(1, 1),
        "jprime_2.68": bessel_jprime_zero(2.68),
        "crossing": jprime_crossing(),
    }
    values["passed"] = (
        round(values["j01"], 4) == 2.4048
        and round(values["j11"], 4) == 3.8317
        and abs(values["jprime_2.68"] - 3.8384) < 5e-5
        and abs(values["crossing"] - 2.6741) <= 1e-4
    )
    return values


def check_equilateral(ctx: AcceptanceContext) -> Dict[str, Any]:
    spec = IsoscelesSpec(math.pi / 3, 1.0)
    tone = ctx.tone(spec.aperture)
    rel = abs(tone.value - EQUILATERAL_TONE) / EQUILATERAL_TONE

    modes = neumann_spectrum(spec, ctx.settings.levels_for(ctx.budget)[0], k=3, settings=ctx.settings)
    mu = [m.eigenvalue for m in modes]
    pair_split = mu[1] / mu[0] - 1.0
    next_gap = mu[2] / mu[0]

    exact = equilateral_integrals().to_dict()
    approx = equilateral_integrals_by_quadrature().to_dict()
    quad_err = max(abs(approx[k] - exact[k]) / abs(exact[k]) for k in exact)
    return {
        "mu1": tone.value,
        "relative_error": rel,
        "pair_split": pair_split,
        "next_ratio": next_gap,
        "quadrature_error": quad_err,
        "passed": rel < 1e-3 and pair_split < 1e-2 and next_gap > 2.0 and quad_err < 1e-8,
    }


def _figure_points(ctx: AcceptanceContext, which: int, apertures: Iterable[float],
                   symmetry_class: Optional[str]) -> List[tuple]:
    points = []
    for a in apertures:
        spec = IsoscelesSpec(solve_aperture(which, a), 1.0)
        tone = ctx.tone(spec.aperture, symmetry_class)
        points.append((spec.aperture, tone.value * spec.diameter ** 2))
    return points


def _figure_check(ctx: AcceptanceContext, which: int, plan: Dict[str, tuple]) -> Dict[str, Any]:
    details: Dict[str, Any] = {"deviations": [], "limits": []}
    passed = True
    for column, (cls, apertures) in plan.items():
        points = _figure_points(ctx, which, apertures, cls)
        deviations = compare_with_reference(which, column, points, ctx.settings)
        approach = limit_approach(which, column, points)
        if approach is not None:
            details["limits"].append(approach)
            passed &= approach["approaching"]
        details["deviations"].extend(d.to_dict() for d in deviations)
        passed &= len(deviations) == len(apertures)
        passed &= all(d.relative_error <= FIGURE_FAIL_TOLERANCE for d in deviations)
    details["passed"] = passed
    return details


def check_figure2(ctx: AcceptanceContext) -> Dict[str, Any]:
    return _figure_check(ctx, FIGURE_SUBEQUILATERAL, {
        "mu1D2": (None, (0.1047, 0.2932, 0.5288, 0.7645, 1.0472)),
        "muaD2": ("antisymmetric", (0.9529, 0.7173)),
    })


def check_figure3(ctx: AcceptanceContext) -> Dict[str, Any]:
    return _figure_check(ctx, FIGURE_SUPEREQUILATERAL, {
        "mu1D2": (None, (1.2566, 1.5708, 2.0296, 3.1000)),
        "musD2": ("symmetric", (1.5708, 2.0296)),
    })


def check_chain(ctx: AcceptanceContext) -> Dict[str, Any]:
    reports = audit_batch(ctx.audit_count, ctx.audit_seed, budget="fast", settings=ctx.settings,
                          include_stress=False)
    watched = {"thm_diameter_lower", "perimeter_lower", "cheng_upper"}
    failures = []
    for label, report in reports:
        for entry in report.entries:
            if entry.name in watched and not entry.satisfied:
                failures.append({"case": label, "bound": entry.name, "margin": entry.margin})
    return {"count": len(reports), "failures": failures, "passed": not failures}


def check_symmetry_transition(ctx: AcceptanceContext) -> Dict[str, Any]:
    n = ctx.settings.levels_for(ctx.budget)[0]
    expected = {a: "symmetric" for a in (0.2, 0.5, 0.8, 1.0)}
    expected.update({a: "antisymmetric" for a in (1.1, 1.5, 2.0, 2.6)})
    observed = {}
    for a in expected:
        mode = neumann_spectrum(IsoscelesSpec(a, 1.0), n, k=1, settings=ctx.settings)[0]
        observed[a] = mode.symmetry.value
    mismatches = {a: observed[a] for a in expected if observed[a] != expected[a]}
    return {"observed": observed, "mismatches": mismatches, "passed": not mismatches}


def check_boundsiso(ctx: AcceptanceContext) -> Dict[str, Any]:
    rows, passed = [], True
    j2 = J11 ** 2
    for a in (0.05, 0.1, 0.3, 0.6, 0.9):
        tone = ctx.tone(a)
        sandwich = boundsiso_sandwich(a, 1.0)
        ok = sandwich["lower"] < tone.value <= sandwich["upper"] + ctx.slack(tone)
        rows.append({"aperture": a, "mu1D2": tone.value, **sandwich, "ok": ok})
        passed &= ok
        if a == 0.05:
            passed &= abs(tone.value - j2) / j2 < 2e-3
            passed &= abs(sandwich["upper"] - j2) / j2 < 2e-3
            passed &= abs(sandwich["lower"] - j2) / j2 < 3e-2
    return {"rows": rows, "passed": passed}


def check_prop1d(ctx: AcceptanceContext) -> Dict[str, Any]:
    rows, passed = [], True
    for b in (1.2, 1.8, 2.4, 3.0):
        tone = ctx.tone(b)
        d2 = IsoscelesSpec(b, 1.0).diameter ** 2
        value, slack = tone.value * d2, ctx.slack(tone) * d2
        bounds = {k: v * d2 for k, v in prop1d_bounds(b, 1.0).items()}
        ok = (bounds["lower"] <= value + slack and value < bounds["upper"] + slack
              and bounds["improved_lower"] < value + slack)
        rows.append({"aperture": b, "mu1D2": value, **bounds, "ok": ok})
        passed &= ok

    tone = ctx.tone(3.1)
    value = tone.value * IsoscelesSpec(3.1, 1.0).diameter ** 2
    gap = abs(4.0 * J01 ** 2 - value) / (4.0 * J01 ** 2)
    return {"rows": rows, "gap_at_3.1": gap, "passed": passed and gap < 2e-2}


def check_bisect_chain(ctx: AcceptanceContext) -> Dict[str, Any]:
    result = bisect_stretch_chain(math.pi / 3, 5, budget=ctx.budget, settings=ctx.settings)
    first = bisect_stretch_step(math.pi / 3)
    final = result.final.mu1D2
    j2 = J11 ** 2
    return {
        "chain": [s.mu1D2 for s in result.steps],
        "cos_alpha1": math.cos(first),
        "passed": (result.monotone and j2 < final < j2 + 0.5
                   and abs(math.cos(first) - 0.75) < 1e-12),
    }


def check_transplant(ctx: AcceptanceContext) -> Dict[str, Any]:
    levels = ctx.settings.levels_for(ctx.budget)
    n = levels[1]
    w = symmetry_reduced_tone(IsoscelesSpec(math.pi / 3, 1.0), n, "symmetric", ctx.settings)
    ratio = gradient_split(w)["ratio"]
    ratio_ok = abs(ratio - SYMMETRIC_RATIO_THRESHOLD) < 1e-3

    thresholds = [transplant_threshold(math.pi / 3, b, g_equilateral(b)) for b in (1.1, 1.3, 1.5)]
    threshold_ok = all(abs(t - 0.5) < 1e-12 for t in thresholds)

    fired_ok = True
    verdicts = []
    for a in (0.5, 0.9):
        verdict = corcomp_check(a, math.pi / 3, w, w.eigenvalue, mu_alpha=ctx.tone(a).value)
        verdicts.append(verdict.to_dict())
        if verdict.condition_met:
            fired_ok &= verdict.numerically_confirmed

    beta = 1.3
    ws = symmetry_reduced_tone(IsoscelesSpec(beta, 1.0), n, "symmetric", ctx.settings)
    split = symmetric_case_split(beta, ws, ws.eigenvalue)
    verdict = split["verdict"]
    if verdict.condition_met:
        fired_ok &= verdict.numerically_confirmed
    verdicts.append(verdict.to_dict())

    return {
        "ratio": ratio,
        "thresholds": thresholds,
        "verdicts": verdicts,
        "passed": ratio_ok and threshold_ok and fired_ok and split["mu_s_above_rewrite"],
    }


def check_rayleigh_principle(ctx: AcceptanceContext) -> Dict[str, Any]:
    spec = IsoscelesSpec(0.8, 1.0)
    n = 16
    mesh = isosceles_mesh(spec, n)
    mu1 = neumann_spectrum(spec, n, k=1, settings=ctx.settings)[0].eigenvalue
    rng = np.random.default_rng(0)
    quotients = [rayleigh_quotient_of(mesh, rng.standard_normal(mesh.vertex_count)) for _ in range(100)]
    return {"mu1": mu1, "min_quotient": min(quotients), "passed": min(quotients) >= mu1}


def check_convergence_order(ctx: AcceptanceContext) -> Dict[str, Any]:
    orders = {}
    for a in (math.pi / 3, 2.0):
        orders[a] = ctx.tone(a, levels=[32, 64, 128]).observed_order
    return {"orders": orders, "passed": all(abs(p - 2.0) <= 0.3 for p in orders.values())}


CHECKS: Dict[int, tuple] = {
    1: ("Bessel 常数", check_bessel),
    2: ("等边三角形基准", check_equilateral),
    3: ("亚等边族回归", check_figure2),
    4: ("超等边族回归", check_figure3),
    5: ("随机三角形的不等式链", check_chain),
    6: ("对称性转变", check_symmetry_transition),
    7: ("亚等边夹逼区间", check_boundsiso),
    8: ("超等边区间界", check_prop1d),
    9: ("对分拉伸链", check_bisect_chain),
    10: ("移植比较", check_transplant),
    11: ("离散 Rayleigh 原理", check_rayleigh_principle),
    12: ("收敛阶", check_convergence_order),
}


def run_check(number: int, ctx: AcceptanceContext) -> AcceptanceResult:
    title, func = CHECKS[number]
    start = time.perf_counter()
    try:
        details = func(ctx)
        passed = bool(details.pop("passed"))
        error = None
    except Exception as e:
        logger.error(f"检查 {number} 出错: {e}")
        details, passed, error = {}, False, str(e)
    elapsed = time.perf_counter() - start
    logger.info(f"检查 {number} {title}: {'通过' if passed else '失败'}（{elapsed:.1f} s）")
    return AcceptanceResult(number=number, title=title, passed=passed, details=details,
                            seconds=elapsed, error=error)


def run_acceptance(selected: Optional[Iterable[int]] = None, settings: Optional[LabSettings] = None,
                   budget: Optional[str] = None, audit_count: int = 200,
                   progress: Optional[Callable[[AcceptanceResult], None]] = None) -> List[AcceptanceResult]:
    """
    运行验收检查

    Args:
        selected: 检查编号，None 表示全部
        settings: 配置
        budget: 网格预算
        audit_count: 检查 5 的随机三角形个数
        progress: 每完成一项时的回调

    Returns:
        List[AcceptanceResult]: 按编号排列
    """
    ctx = AcceptanceContext(settings=settings, budget=budget, audit_count=audit_count)
    numbers = sorted(selected) if selected is not None else sorted(CHECKS)
    results = []
    for number in numbers:
        if number not in CHECKS:
            raise DomainError(f"没有编号为 {number} 的检查")
        result = run_check(number, ctx)
        results.append(result)
        if progress is not None:
            progress(result)
    return results
