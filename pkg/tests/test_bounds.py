"""
测试闭式界、移植比较、界审计和对分拉伸链
"""

import math
import os
import unittest
from unittest import mock

import numpy as np

from core.bounds import (
    BoundKind,
    BoundStatus,
    antisymmetric_case_split,
    audit,
    audit_batch,
    bisect_stretch_chain,
    boundsiso_sandwich,
    chain_apertures,
    cheng_antisymmetry_threshold,
    cheng_implies_antisymmetric,
    g_equilateral,
    g_right_isosceles,
    gradient_split,
    lemcomp_check,
    prop1d_bounds,
    random_triangle,
    stress_set,
    sum_of_squares_upper,
    symmetric_case_split,
    symmetric_rewrite_lower,
    thm_diameter_lower,
    transplant_factor,
    transplant_threshold,
    transplanted_sector_quotient,
)
from core.bounds.audit import judge
from core.bounds.formulas import EQUILATERAL_TONE, SYMMETRIC_RATIO_THRESHOLD
from core.errors import ApertureRangeError, DomainError, MeshCompatibilityError
from core.fem import ExtrapolatedTone, isosceles_mesh, rayleigh_quotient_of
from core.geometry import IsoscelesSpec, Triangle, unit_equilateral
from core.settings import THREADS_ENV, LabSettings
from core.special_fn import J01, J11


def _tone(value, error=1e-4, fallback=None):
    return ExtrapolatedTone(value=value, error_estimate=error, levels_used=[16, 32, 64],
                            observed_order=2.0, fallback=fallback)


class TestFormulas(unittest.TestCase):
    """测试闭式界"""

    def test_equilateral_sum_of_squares_is_sharp(self):
        """测试边长平方和上界在等边三角形上取等号"""
        self.assertAlmostEqual(sum_of_squares_upper(unit_equilateral()), EQUILATERAL_TONE, places=12)

    def test_diameter_lower(self):
        """测试直径下界随尺度变化"""
        self.assertAlmostEqual(thm_diameter_lower(IsoscelesSpec(math.pi / 2, 1.0)), J11 ** 2 / 2.0, places=12)

    def test_sandwich(self):
        """测试亚等边夹逼区间的范围与端点"""
        s = boundsiso_sandwich(math.pi / 3)
        self.assertLess(s["lower"], EQUILATERAL_TONE)
        self.assertGreater(s["upper"], EQUILATERAL_TONE)
        thin = boundsiso_sandwich(1e-4)
        self.assertAlmostEqual(thin["lower"], J11 ** 2, places=3)
        self.assertAlmostEqual(thin["upper"], J11 ** 2, places=6)
        with self.assertRaises(ApertureRangeError):
            boundsiso_sandwich(1.2)
        with self.assertRaises(ApertureRangeError):
            boundsiso_sandwich(0.0)
        with self.assertRaises(DomainError):
            boundsiso_sandwich(0.5, -1.0)

    def test_interval_bounds(self):
        """测试超等边区间界及改进下界"""
        bounds = prop1d_bounds(3.0)
        d2 = (2.0 * math.sin(1.5)) ** 2
        self.assertAlmostEqual(bounds["improved_lower"] * d2, 23.094, places=3)
        self.assertAlmostEqual(bounds["upper"] * d2, 4 * J01 ** 2, places=10)
        self.assertLess(bounds["lower"], bounds["improved_lower"])
        self.assertLess(bounds["improved_lower"], bounds["upper"])
        with self.assertRaises(ApertureRangeError):
            prop1d_bounds(math.pi / 3)

    def test_equilateral_endpoint_threshold(self):
        """测试以等边三角形为端点时阈值恒为 1/2"""
        for beta in (1.1, 1.3, 1.5):
            self.assertAlmostEqual(transplant_threshold(math.pi / 3, beta, g_equilateral(beta)), 0.5, places=12)

    def test_threshold_without_g(self):
        """测试 G = 0 时阈值为 sin²(α/2)，α = β 报错"""
        self.assertAlmostEqual(transplant_threshold(1.0, 0.4), math.sin(0.5) ** 2, places=14)
        with self.assertRaises(DomainError):
            transplant_threshold(0.7, 0.7)

    def test_factor_at_threshold(self):
        """测试 κ 等于阈值时移植因子恰为 1 + G"""
        beta = 1.2
        for alpha, G in ((math.pi / 3, g_equilateral(beta)), (math.pi / 2, g_right_isosceles(beta))):
            k = transplant_threshold(alpha, beta, G)
            self.assertAlmostEqual(transplant_factor(alpha, beta, k), 1.0 + G, places=12)

    def test_constants(self):
        """测试对称类阈值和 Cheng 阈值"""
        self.assertAlmostEqual(SYMMETRIC_RATIO_THRESHOLD, 0.1303, places=3)
        self.assertAlmostEqual(cheng_antisymmetry_threshold(), 0.3939, places=3)
        self.assertTrue(cheng_implies_antisymmetric(2.0))
        self.assertFalse(cheng_implies_antisymmetric(1.2))

    def test_rewrite_range(self):
        """测试对称类改写下界的适用范围"""
        self.assertAlmostEqual(symmetric_rewrite_lower(1.3),
                               16 * math.pi ** 2 / (12 * math.sin(0.65) ** 2 + 6), places=12)
        with self.assertRaises(ApertureRangeError):
            symmetric_rewrite_lower(math.pi / 2)


class TestJudge(unittest.TestCase):
    """测试单条界的判定"""

    def test_statuses(self):
        """测试 ok / 容差内 / 违反 / 不适用"""
        tone = _tone(10.0, 0.1)
        self.assertEqual(judge("a", BoundKind.LOWER, 5.0, tone, 3.0).status, BoundStatus.OK)
        near = judge("b", BoundKind.UPPER, 9.9, tone, 3.0)
        self.assertEqual(near.status, BoundStatus.WITHIN_SLACK)
        self.assertTrue(near.satisfied)
        far = judge("c", BoundKind.UPPER, 9.0, tone, 3.0)
        self.assertEqual(far.status, BoundStatus.VIOLATED)
        self.assertFalse(far.satisfied)
        self.assertAlmostEqual(far.margin, -1.0, places=12)
        self.assertEqual(judge("d", BoundKind.LOWER, 50.0, tone, 3.0, applicable=False).status,
                         BoundStatus.SKIPPED)

    def test_fallback_interval(self):
        """测试夹逼区间形式的 μ₁ 只要与界不矛盾即成立"""
        tone = _tone(1.5, 0.5, fallback={"lower": 1.0, "upper": 2.0})
        self.assertEqual(judge("a", BoundKind.LOWER, 1.8, tone, 3.0).status, BoundStatus.OK)
        self.assertEqual(judge("b", BoundKind.UPPER, 1.2, tone, 3.0).status, BoundStatus.OK)
        self.assertEqual(judge("c", BoundKind.LOWER, 2.5, tone, 3.0).status, BoundStatus.VIOLATED)


class TestAudit(unittest.TestCase):
    """测试界审计（有限元部分用 mock 替换）"""

    def setUp(self):
        self.settings = LabSettings()

    def test_equilateral_chain(self):
        """测试等边三角形在精确基频下不等式链成立"""
        with mock.patch("core.bounds.audit.extrapolate_tone", return_value=_tone(EQUILATERAL_TONE)):
            report = audit(unit_equilateral(), settings=self.settings)
        self.assertTrue(report.chain_ok)
        self.assertEqual(report.triangle_class, "equilateral")
        self.assertIsNone(report.fundamental_symmetry)
        names = {e.name for e in report.entries}
        self.assertIn("boundsiso_upper", names)
        self.assertIn("sum_of_squares_upper", names)

    def test_scalene_violation(self):
        """测试低于 j11²/D² 的值被判为违反"""
        t = Triangle(((0.0, 0.0), (1.0, 0.0), (0.3, 0.8)))
        with mock.patch("core.bounds.audit.extrapolate_tone", return_value=_tone(15.0)):
            good = audit(t, settings=self.settings)
        self.assertTrue(good.chain_ok)
        self.assertEqual(good.triangle_class, "scalene_or_other_isosceles")
        self.assertIsNone(good.mu_s)

        with mock.patch("core.bounds.audit.extrapolate_tone", return_value=_tone(10.0)):
            bad = audit(t, settings=self.settings)
        self.assertFalse(bad.chain_ok)
        self.assertIn("thm_diameter_lower", [e.name for e in bad.failures()])
        self.assertIn("❌", bad.to_table())
        self.assertFalse(bad.to_dict()["chain_ok"])

    def test_symmetry_transition_checked(self):
        """测试超等边三角形要求反对称基本模态"""
        spec = IsoscelesSpec(2.0, 1.0)
        values = {None: 7.5, "symmetric": 15.0, "antisymmetric": 7.5}

        def fake(shape, symmetry_class=None, **kwargs):
            return _tone(values[symmetry_class])

        with mock.patch("core.bounds.audit.extrapolate_tone", side_effect=fake):
            report = audit(spec, settings=self.settings)
        self.assertEqual(report.fundamental_symmetry, "antisymmetric")
        self.assertTrue(report.chain_ok)
        self.assertTrue(report.symmetry_ok)

        values["symmetric"], values["antisymmetric"] = 7.5, 15.0
        with mock.patch("core.bounds.audit.extrapolate_tone", side_effect=fake):
            report = audit(spec, settings=self.settings)
        self.assertFalse(report.symmetry_ok)
        self.assertFalse(report.chain_ok)

    def test_random_triangles_reproducible(self):
        """测试随机三角形由种子决定且非退化"""
        a = [random_triangle(np.random.default_rng(11)).to_list() for _ in range(2)]
        self.assertEqual(a[0], a[1])
        rng = np.random.default_rng(5)
        for _ in range(20):
            t = random_triangle(rng)
            self.assertGreater(t.area, 0.0)
            self.assertLessEqual(max(t.angles()), 3.0 + 1e-9)

    def test_batch(self):
        """测试批量审计的标签和压力测试集"""
        self.assertEqual([label for label, _ in stress_set()][-1], "equilateral")
        with self.assertRaises(DomainError):
            audit_batch(-1, 0)
        with mock.patch("core.bounds.audit.audit", return_value="r") as fake:
            reports = audit_batch(3, 1, include_stress=False)
        self.assertEqual([label for label, _ in reports], ["random_000", "random_001", "random_002"])
        self.assertEqual(fake.call_count, 3)

    def test_audit_batch_fans_out_over_cases(self):
        """测试批量审计在三角形之间并发，结果保持输入顺序"""
        def fake_audit(shape, **kwargs):
            self.assertEqual(kwargs["threads"], 1)
            return shape.perimeter

        with mock.patch.dict(os.environ, {THREADS_ENV: "4"}), \
                mock.patch("core.bounds.audit.audit", side_effect=fake_audit):
            reports = audit_batch(12, 3, settings=LabSettings(), include_stress=False)
        rng = np.random.default_rng(3)
        expected = [random_triangle(rng).perimeter for _ in range(12)]
        self.assertEqual([label for label, _ in reports], [f"random_{i:03d}" for i in range(12)])
        self.assertEqual([value for _, value in reports], expected)


class TestTransplant(unittest.TestCase):
    """测试移植比较"""

    def setUp(self):
        self.beta = 0.6
        self.mesh = isosceles_mesh(IsoscelesSpec(self.beta, 1.0), 6)
        self.x = self.mesh.vertices[:, 0].copy()
        self.y = self.mesh.vertices[:, 1].copy()

    def test_case_ii(self):
        """测试 α > β 且 κ 大于阈值（情形 ii）"""
        verdict = lemcomp_check(1.0, self.beta, (self.mesh, self.y), 50.0, 0.0, confirm=False)
        self.assertEqual(verdict.case, "ii")
        self.assertAlmostEqual(verdict.kappa, 1.0, places=12)
        self.assertTrue(verdict.condition_met)
        self.assertTrue(verdict.identity_holds)
        self.assertFalse(verdict.numerically_confirmed)
        self.assertIsNone(verdict.to_dict()["ratio"])

    def test_transplanted_quotient_matches_factor(self):
        """测试映射网格上的 Rayleigh 商等于移植因子乘原 Rayleigh 商"""
        values = self.x + 0.3 * self.y
        verdict = lemcomp_check(1.0, self.beta, (self.mesh, values), 50.0, 0.0, confirm=False)
        expected = verdict.factor * rayleigh_quotient_of(self.mesh, values)
        self.assertAlmostEqual(verdict.transplanted_quotient / expected, 1.0, places=10)

    def test_case_i(self):
        """测试 α < β 且 κ 小于阈值（情形 i）"""
        verdict = lemcomp_check(0.3, self.beta, (self.mesh, self.x), 50.0, 0.0, confirm=False)
        self.assertEqual(verdict.case, "i")
        self.assertTrue(verdict.condition_met)

    def test_confirmation_with_known_tone(self):
        """测试给定 μ(α) 时的数值确认"""
        verdict = lemcomp_check(1.0, self.beta, (self.mesh, self.y), 50.0, 0.0, mu_alpha=40.0)
        self.assertTrue(verdict.numerically_confirmed)

    def test_mesh_mismatch(self):
        """测试网格与 β 不符、α = β 以及常数函数"""
        with self.assertRaises(MeshCompatibilityError):
            lemcomp_check(1.0, 0.8, (self.mesh, self.y), 50.0, 0.0, confirm=False)
        with self.assertRaises(DomainError):
            lemcomp_check(self.beta, self.beta, (self.mesh, self.y), 50.0, 0.0, confirm=False)
        with self.assertRaises(MeshCompatibilityError):
            lemcomp_check(1.0, self.beta, (self.mesh, self.y[:5]), 50.0, 0.0, confirm=False)
        with self.assertRaises(DomainError):
            gradient_split((self.mesh, np.ones(self.mesh.vertex_count)))

    def test_symmetric_case_split(self):
        """测试 κ < 1/2 时以等边三角形为端点"""
        mesh = isosceles_mesh(IsoscelesSpec(1.3, 1.0), 6)
        result = symmetric_case_split(1.3, (mesh, mesh.vertices[:, 0]), 20.0)
        self.assertEqual(result["endpoint"], "equilateral")
        verdict = result["verdict"]
        self.assertAlmostEqual(verdict.threshold, 0.5, places=12)
        self.assertTrue(verdict.condition_met)
        self.assertTrue(verdict.numerically_confirmed)
        self.assertTrue(result["mu_s_above_rewrite"])

        result = symmetric_case_split(1.3, (mesh, mesh.vertices[:, 1]), 20.0)
        self.assertEqual(result["endpoint"], "right_isosceles")
        with self.assertRaises(DomainError):
            symmetric_case_split(1.0, (mesh, mesh.vertices[:, 0]), 20.0)

    def test_antisymmetric_case_split(self):
        """测试反对称类的两种情形"""
        by_transplant = antisymmetric_case_split(self.beta, (self.mesh, self.y), 30.0)
        self.assertEqual(by_transplant["case"], "transplant")
        self.assertTrue(by_transplant["verdict"].numerically_confirmed)
        self.assertTrue(by_transplant["holds"])

        by_interval = antisymmetric_case_split(self.beta, (self.mesh, self.x), 30.0)
        self.assertEqual(by_interval["case"], "interval")
        self.assertAlmostEqual(by_interval["interval_lower"], math.pi ** 2 / math.sin(0.3) ** 2, places=10)

    def test_sector_transplant(self):
        """测试移植扇形模态的离散 Rayleigh 商接近闭式值"""
        q = transplanted_sector_quotient(0.5, 1.0, 32)
        self.assertAlmostEqual(q["closed_form"], J11 ** 2 / math.cos(0.25) ** 2, places=10)
        self.assertLess(abs(q["fem"] - q["closed_form"]) / q["closed_form"], 2e-2)
        self.assertLess(abs(q["quadrature"] - q["closed_form"]) / q["closed_form"], 1e-8)
        self.assertLess(q["quadrature_error"], 1e-6 * q["closed_form"])


class TestChain(unittest.TestCase):
    """测试对分拉伸链"""

    def setUp(self):
        self.settings = LabSettings()

    def test_apertures(self):
        """测试每一步 sin(α/2) 缩小 √2 倍"""
        apertures = chain_apertures(math.pi / 3, 4)
        self.assertEqual(len(apertures), 5)
        for a, b in zip(apertures, apertures[1:]):
            self.assertAlmostEqual(math.sin(b / 2), math.sin(a / 2) / math.sqrt(2.0), places=14)
        with self.assertRaises(DomainError):
            chain_apertures(1.0, -1)

    def test_monotone_chain(self):
        """测试下降的链及低于下限后改报夹逼区间"""
        fake = lambda shape, **kwargs: _tone(J11 ** 2 + shape.aperture)  # noqa: E731
        with mock.patch("core.bounds.chain.extrapolate_tone", side_effect=fake):
            result = bisect_stretch_chain(math.pi / 3, 10, settings=self.settings)
        self.assertTrue(result.monotone)
        self.assertEqual(result.stopped_at, 9)
        self.assertFalse(result.final.fem)
        self.assertIsNone(result.steps[0].decreasing)
        self.assertTrue(result.steps[1].decreasing)
        self.assertTrue(result.to_dict()["monotone"])

    def test_increasing_chain(self):
        """测试上升的链被标记"""
        fake = lambda shape, **kwargs: _tone(J11 ** 2 - shape.aperture)  # noqa: E731
        with mock.patch("core.bounds.chain.extrapolate_tone", side_effect=fake):
            result = bisect_stretch_chain(math.pi / 3, 2, settings=self.settings)
        self.assertFalse(result.monotone)

    def test_start_range(self):
        """测试起始孔径必须是亚等边"""
        with self.assertRaises(ApertureRangeError):
            bisect_stretch_chain(1.5, 2, settings=self.settings)


if __name__ == "__main__":
    unittest.main()
