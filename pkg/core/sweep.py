"""
孔径扫描与 CSV 数据集

SweepRecord 是一行扫描结果（全部为 D² 归一化的值），按孔径升序排列；
CSV 格式固定：一行表头，列顺序为基础列 + bound_<名称> 列，浮点数以 repr 写出，
读回再写出逐字节一致。
"""

import csv
import io
import logging
import math
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Sequence

from pydantic import BaseModel, Field, field_validator, model_validator

from core.bounds.formulas import boundsiso_sandwich, cheng_upper, prop1d_bounds
from core.errors import DomainError
from core.fem.extrapolation import extrapolate_tone
from core.fem.parallel import ordered_map
from core.figures import FIGURE_SUBEQUILATERAL, FIGURE_SUPEREQUILATERAL, figure_apertures
from core.geometry.triangle import IsoscelesSpec
from core.settings import LabSettings, get_settings

logger = logging.getLogger(__name__)

BASE_COLUMNS = ["aperture", "mu1D2", "muaD2", "musD2", "error_estimate"]
BOUND_PREFIX = "bound_"


class SweepRecord(BaseModel):
    """一行扫描结果"""
    aperture: float
    mu1D2: float
    muaD2: Optional[float] = None
    musD2: Optional[float] = None
    error_estimate: float = Field(ge=0.0)
    bounds: Dict[str, float] = Field(default_factory=dict)

    @field_validator("aperture", "mu1D2", "muaD2", "musD2", "error_estimate")
    @classmethod
    def _finite(cls, value: Optional[float]) -> Optional[float]:
        if value is not None and not math.isfinite(value):
            raise ValueError(f"数值必须有限: {value}")
        return value

    @field_validator("bounds")
    @classmethod
    def _finite_bounds(cls, bounds: Dict[str, float]) -> Dict[str, float]:
        for name, value in bounds.items():
            if not math.isfinite(value):
                raise ValueError(f"界 {name} 必须有限: {value}")
        return bounds

    @model_validator(mode="after")
    def _positive_aperture(self) -> "SweepRecord":
        if not (0.0 < self.aperture < math.pi):
            raise ValueError(f"孔径必须在 (0, π) 内: {self.aperture}")
        return self


def _format(value: Optional[float]) -> str:
    return "" if value is None else repr(float(value))


def _parse(text: str) -> Optional[float]:
    return None if text == "" else float(text)


def check_order(records: Sequence[SweepRecord]) -> None:
    """行按孔径严格升序"""
    for prev, cur in zip(records, records[1:]):
        if not cur.aperture > prev.aperture:
            raise DomainError(f"扫描行必须按孔径升序: {prev.aperture} 之后是 {cur.aperture}")


def columns_for(records: Sequence[SweepRecord]) -> List[str]:
    """表头：基础列 + 第一行出现的界（按插入顺序）"""
    names = list(records[0].bounds) if records else []
    return BASE_COLUMNS + [BOUND_PREFIX + name for name in names]


def records_to_csv(records: Sequence[SweepRecord]) -> str:
    """
    序列化为 CSV 文本

    Raises:
        DomainError: 行未排序，或各行的界名称不一致
    """
    check_order(records)
    header = columns_for(records)
    names = [c[len(BOUND_PREFIX):] for c in header if c.startswith(BOUND_PREFIX)]
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    for record in records:
        if list(record.bounds) != names:
            raise DomainError(f"孔径 {record.aperture} 的界名称 {list(record.bounds)} 与表头 {names} 不一致")
        row = {
            "aperture": _format(record.aperture),
            "mu1D2": _format(record.mu1D2),
            "muaD2": _format(record.muaD2),
            "musD2": _format(record.musD2),
            "error_estimate": _format(record.error_estimate),
        }
        row.update({BOUND_PREFIX + name: _format(value) for name, value in record.bounds.items()})
        writer.writerow(row)
    return buffer.getvalue()


def records_from_csv(text: str) -> List[SweepRecord]:
    """解析 records_to_csv 写出的文本"""
    reader = csv.DictReader(io.StringIO(text))
    header = reader.fieldnames or []
    if header[:len(BASE_COLUMNS)] != BASE_COLUMNS:
        raise DomainError(f"CSV 表头不是扫描数据集: {header}")
    bound_columns = [c for c in header if c.startswith(BOUND_PREFIX)]
    records = []
    for row in reader:
        records.append(SweepRecord(
            aperture=_parse(row["aperture"]),
            mu1D2=_parse(row["mu1D2"]),
            muaD2=_parse(row["muaD2"]),
            musD2=_parse(row["musD2"]),
            error_estimate=_parse(row["error_estimate"]),
            bounds={c[len(BOUND_PREFIX):]: _parse(row[c]) for c in bound_columns},
        ))
    check_order(records)
    return records


def write_csv(records: Sequence[SweepRecord], path: str) -> Path:
    """写到显式给出的路径"""
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8", newline="") as f:
        f.write(records_to_csv(records))
    logger.info(f"已写出 {len(records)} 行: {out}")
    return out


def read_csv(path: str) -> List[SweepRecord]:
    with open(path, "r", encoding="utf-8", newline="") as f:
        return records_from_csv(f.read())


def run_sweep(apertures: Iterable[float], row: Callable[[float], SweepRecord],
              settings: Optional[LabSettings] = None) -> List[SweepRecord]:
    """
    并发计算各孔径的行，按孔径升序返回

    Args:
        apertures: 孔径
        row: 孔径 → SweepRecord
        settings: 配置（线程数）
    """
    ordered = sorted(float(a) for a in apertures)
    records = ordered_map(row, ordered, settings=settings)
    check_order(records)
    return records


def subequilateral_row(aperture: float, budget: Optional[str] = None,
                       settings: Optional[LabSettings] = None) -> SweepRecord:
    """亚等边 T(α, 1)：μ₁D²、μ_aD² 与夹逼区间（D = 1）"""
    spec = IsoscelesSpec(aperture, 1.0)
    mu1 = extrapolate_tone(spec, settings=settings, budget=budget)
    mua = extrapolate_tone(spec, symmetry_class="antisymmetric", settings=settings, budget=budget)
    sandwich = boundsiso_sandwich(aperture, 1.0)
    return SweepRecord(
        aperture=aperture, mu1D2=mu1.value, muaD2=mua.value,
        error_estimate=mu1.error_estimate,
        bounds={"boundsiso_lower": sandwich["lower"], "boundsiso_upper": sandwich["upper"]},
    )


def superequilateral_row(aperture: float, budget: Optional[str] = None,
                         settings: Optional[LabSettings] = None) -> SweepRecord:
    """超等边 T(β, 1)：μ₁D²、μ_sD² 与区间界（D = 2 sin(β/2)）"""
    spec = IsoscelesSpec(aperture, 1.0)
    d2 = spec.diameter ** 2
    mu1 = extrapolate_tone(spec, settings=settings, budget=budget)
    mus = extrapolate_tone(spec, symmetry_class="symmetric", settings=settings, budget=budget)
    bounds = prop1d_bounds(aperture, 1.0)
    return SweepRecord(
        aperture=aperture, mu1D2=mu1.value * d2, musD2=mus.value * d2,
        error_estimate=mu1.error_estimate * d2,
        bounds={
            "prop1d_lower": bounds["lower"] * d2,
            "prop1d_improved_lower": bounds["improved_lower"] * d2,
            "cheng_upper": cheng_upper(spec) * d2,
        },
    )


def figure_records(which: int, resolution: int = 12, budget: Optional[str] = None,
                   settings: Optional[LabSettings] = None) -> List[SweepRecord]:
    """
    生成图数据集

    Args:
        which: 2（亚等边族）或 3（超等边族）
        resolution: 均匀网格点数（参考孔径总会包含在内）
        budget: 网格预算
        settings: 配置

    Returns:
        List[SweepRecord]: 按孔径升序
    """
    settings = settings or get_settings()
    apertures = figure_apertures(which, resolution)
    if which == FIGURE_SUBEQUILATERAL:
        row = lambda a: subequilateral_row(a, budget, settings)  # noqa: E731
    elif which == FIGURE_SUPEREQUILATERAL:
        row = lambda a: superequilateral_row(a, budget, settings)  # noqa: E731
    else:
        raise DomainError(f"未知图号: {which}")
    logger.info(f"图 {which}: {len(apertures)} 个孔径")
    return run_sweep(apertures, row, settings)
