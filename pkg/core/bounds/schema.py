"""
界审计的数据结构

BoundEntry 记录一条界的取值和判定，BoundReport 汇总一次审计，
TransplantVerdict 记录一次移植比较的结论。三者都能序列化为 JSON，
BoundReport 还能输出对齐的文本表格。
"""

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from core.fem.schema import ExtrapolatedTone
from core.geometry.triangle import Triangle


class BoundKind(str, Enum):
    LOWER = "lower"
    UPPER = "upper"


class BoundStatus(str, Enum):
    """ok：严格成立；within_slack：违反量不超过容差；violated：超出容差；skipped：不适用"""
    OK = "ok"
    WITHIN_SLACK = "within_slack"
    VIOLATED = "violated"
    SKIPPED = "skipped"


def _finite_or_none(value: Optional[float]) -> Optional[float]:
    if value is None or not math.isfinite(value):
        return None
    return value


@dataclass
class BoundEntry:
    """
    一条界

    margin 的符号约定：正值表示界成立（下界时为 μ − value，上界时为 value − μ）。
    conditional 为 True 表示该界依赖某个情形假设，applicable 记录假设是否成立。
    """
    name: str
    kind: BoundKind
    value: float
    applicable: bool = True
    satisfied: bool = True
    margin: float = 0.0
    status: BoundStatus = BoundStatus.OK
    target: str = "mu1"
    conditional: bool = False
    note: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "kind": self.kind.value,
            "value": self.value,
            "applicable": self.applicable,
            "satisfied": self.satisfied,
            "margin": _finite_or_none(self.margin),
            "status": self.status.value,
            "target": self.target,
            "conditional": self.conditional,
            "note": self.note,
        }


@dataclass
class BoundReport:
    """一次审计的结果"""
    triangle: Triangle
    mu1_computed: ExtrapolatedTone
    entries: List[BoundEntry] = field(default_factory=list)
    diameter: float = float("nan")
    perimeter: float = float("nan")
    triangle_class: str = ""
    aperture: Optional[float] = None
    mu_s: Optional[ExtrapolatedTone] = None
    mu_a: Optional[ExtrapolatedTone] = None
    fundamental_symmetry: Optional[str] = None
    expected_symmetry: Optional[str] = None
    symmetry_ok: bool = True

    @property
    def chain_ok(self) -> bool:
        return self.symmetry_ok and all(e.satisfied for e in self.entries if e.applicable)

    @property
    def mu1_d2(self) -> float:
        return self.mu1_computed.value * self.diameter ** 2

    def failures(self) -> List[BoundEntry]:
        return [e for e in self.entries if e.applicable and not e.satisfied]

    def warnings(self) -> List[BoundEntry]:
        return [e for e in self.entries if e.applicable and e.status == BoundStatus.WITHIN_SLACK]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "triangle": self.triangle.to_list(),
            "triangle_class": self.triangle_class,
            "aperture": self.aperture,
            "diameter": self.diameter,
            "perimeter": self.perimeter,
            "mu1": self.mu1_computed.to_dict(),
            "mu1_D2": self.mu1_d2,
            "mu_s": None if self.mu_s is None else self.mu_s.to_dict(),
            "mu_a": None if self.mu_a is None else self.mu_a.to_dict(),
            "fundamental_symmetry": self.fundamental_symmetry,
            "expected_symmetry": self.expected_symmetry,
            "symmetry_ok": self.symmetry_ok,
            "chain_ok": self.chain_ok,
            "entries": [e.to_dict() for e in self.entries],
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=indent)

    def to_table(self) -> str:
        """人类可读的表格"""
        head = "✅" if self.chain_ok else "❌"
        lines = [
            f"{head} 三角形 {self.triangle.to_list()}  类别 {self.triangle_class}",
            f"   D = {self.diameter:.6f}  L = {self.perimeter:.6f}  "
            f"μ₁ = {self.mu1_computed.value:.8f} ± {self.mu1_computed.error_estimate:.2e}  "
            f"μ₁D² = {self.mu1_d2:.6f}",
        ]
        if self.fundamental_symmetry is not None:
            mark = "✅" if self.symmetry_ok else "❌"
            lines.append(f"   {mark} 基本模态对称性 {self.fundamental_symmetry}"
                         f"（期望 {self.expected_symmetry or '-'}）")
        lines.append(f"   {'界':<28}{'类型':<8}{'对象':<8}{'取值':>16}{'余量':>14}  状态")
        for e in self.entries:
            if not e.applicable:
                state = "⏭️  不适用"
            elif e.status == BoundStatus.OK:
                state = "✅"
            elif e.status == BoundStatus.WITHIN_SLACK:
                state = "⚠️  容差内"
            else:
                state = "❌ 违反"
            lines.append(f"   {e.name:<28}{e.kind.value:<8}{e.target:<8}"
                         f"{e.value:>16.8f}{e.margin:>14.3e}  {state}")
        return "\n".join(lines)


@dataclass
class TransplantVerdict:
    """
    移植比较 μ(α) < (1 + G) μ(β) 的结论

    kappa = ∫w_y² / ∫(w_x² + w_y²)，ratio = ∫w_y² / ∫w_x²，均由单元梯度计算。
    factor 为 R[w∘τ]/R[w]，transplanted_quotient 为映射网格上 w∘τ 的离散 Rayleigh 商。
    """
    alpha: float
    beta: float
    kappa: float
    G: float
    threshold: float
    case: str
    condition_met: bool
    implied: Dict[str, Any]
    ratio: float = float("nan")
    factor: float = float("nan")
    identity_holds: bool = False
    transplanted_quotient: float = float("nan")
    mu_alpha: Optional[float] = None
    numerically_confirmed: bool = False
    trial_class: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "kappa": self.kappa,
            "ratio": _finite_or_none(self.ratio),
            "G": self.G,
            "threshold": self.threshold,
            "case": self.case,
            "condition_met": self.condition_met,
            "implied": dict(self.implied),
            "factor": _finite_or_none(self.factor),
            "identity_holds": self.identity_holds,
            "transplanted_quotient": _finite_or_none(self.transplanted_quotient),
            "mu_alpha": self.mu_alpha,
            "numerically_confirmed": self.numerically_confirmed,
            "trial_class": self.trial_class,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)
