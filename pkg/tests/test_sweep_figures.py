"""
测试孔径扫描数据集和图表参考数据
"""

import math
import os
import tempfile
import unittest
from unittest import mock

from pydantic import ValidationError

from core.errors import DomainError
from core.fem import ExtrapolatedTone
from core.figures import (
    FIGURE_SUBEQUILATERAL,
    FIGURE_SUPEREQUILATERAL,
    LIMIT_POINTS,
    compare_with_reference,
    figure_apertures,
    limit_approach,
    reference_value,
    solve_aperture,
)
from core.settings import LabSettings
from core.special_fn import J11
from core.sweep import (
    SweepRecord,
    check_order,
    figure_records,
    read_csv,
    records_from_csv,
    records_to_csv,
    run_sweep,
    write_csv,
)


def _records():
    return [
        SweepRecord(aperture=0.1, mu1D2=14.7, muaD2=None, error_estimate=1e-5,
                    bounds={"boundsiso_lower": 14.5, "boundsiso_upper": 14.72}),
        SweepRecord(aperture=math.pi / 3, mu1D2=16 * math.pi ** 2 / 9, muaD2=17.546, error_estimate=2e-5,
                    bounds={"boundsiso_lower": 7.68, "boundsiso_upper": 19.57}),
    ]


class TestSweepCsv(unittest.TestCase):
    """测试 CSV 读写"""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        import shutil
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def test_header_and_rows(self):
        """测试表头顺序与空值写法"""
        text = records_to_csv(_records())
        lines = text.splitlines()
        self.assertEqual(lines[0], "aperture,mu1D2,muaD2,musD2,error_estimate,"
                                   "bound_boundsiso_lower,bound_boundsiso_upper")
        self.assertEqual(len(lines), 3)
        self.assertTrue(lines[1].startswith("0.1,14.7,,,"))

    def test_rewrite_is_byte_identical(self):
        """测试读回再写出逐字节一致"""
        text = records_to_csv(_records())
        again = records_to_csv(records_from_csv(text))
        self.assertEqual(text, again)

    def test_file_round_trip(self):
        """测试写文件和读文件"""
        path = os.path.join(self.temp_dir, "sub", "fig2.csv")
        write_csv(_records(), path)
        self.assertTrue(os.path.exists(path))
        loaded = read_csv(path)
        self.assertEqual(loaded[1].aperture, math.pi / 3)
        self.assertIsNone(loaded[0].muaD2)

    def test_order_enforced(self):
        """测试未按孔径升序的行被拒绝"""
        with self.assertRaises(DomainError):
            check_order(list(reversed(_records())))
        with self.assertRaises(DomainError):
            records_to_csv(list(reversed(_records())))

    def test_bound_names_must_match(self):
        """测试各行的界名称必须一致"""
        records = _records()
        records[1] = SweepRecord(aperture=1.0, mu1D2=17.0, error_estimate=0.0, bounds={"other": 1.0})
        with self.assertRaises(DomainError):
            records_to_csv(records)

    def test_foreign_header(self):
        """测试表头不符的 CSV"""
        with self.assertRaises(DomainError):
            records_from_csv("a,b\n1,2\n")

    def test_validation(self):
        """测试非有限值和孔径范围"""
        with self.assertRaises(ValidationError):
            SweepRecord(aperture=0.5, mu1D2=float("nan"), error_estimate=0.0)
        with self.assertRaises(ValidationError):
            SweepRecord(aperture=4.0, mu1D2=1.0, error_estimate=0.0)
        with self.assertRaises(ValidationError):
            SweepRecord(aperture=0.5, mu1D2=1.0, error_estimate=-1.0)

    def test_run_sweep_sorts(self):
        """测试扫描结果按孔径升序"""
        row = lambda a: SweepRecord(aperture=a, mu1D2=a + 10, error_estimate=0.0)  # noqa: E731
        records = run_sweep([0.9, 0.2, 0.5], row, LabSettings(threads=2))
        self.assertEqual([r.aperture for r in records], [0.2, 0.5, 0.9])


class TestFigures(unittest.TestCase):
    """测试图表参考数据"""

    def test_snap_to_equilateral(self):
        """测试打印的 1.0472 按 π/3 求解"""
        self.assertEqual(solve_aperture(FIGURE_SUBEQUILATERAL, 1.0472), math.pi / 3)
        self.assertEqual(solve_aperture(FIGURE_SUPEREQUILATERAL, 1.0996), 1.0996)
        with self.assertRaises(DomainError):
            solve_aperture(4, 1.0)

    def test_apertures(self):
        """测试扫描网格包含参考孔径且位于各自区间"""
        sub = figure_apertures(FIGURE_SUBEQUILATERAL, 6)
        self.assertEqual(sub, sorted(sub))
        self.assertEqual(sub[-1], math.pi / 3)
        self.assertIn(0.05, sub)
        self.assertTrue(all(0.0 < a <= math.pi / 3 for a in sub))

        sup = figure_apertures(FIGURE_SUPEREQUILATERAL, 6)
        self.assertIn(2.9471, sup)
        self.assertTrue(all(a < math.pi for a in sup))
        with self.assertRaises(DomainError):
            figure_apertures(FIGURE_SUBEQUILATERAL, 0)

    def test_reference_lookup(self):
        """测试参考值查找"""
        self.assertEqual(reference_value(FIGURE_SUBEQUILATERAL, "mu1D2", math.pi / 3), 17.5460)
        self.assertIsNone(reference_value(FIGURE_SUBEQUILATERAL, "mu1D2", 0.3))
        self.assertIsNone(reference_value(FIGURE_SUPEREQUILATERAL, "muaD2", 1.0996))

    def test_compare(self):
        """测试偏差的目标与标记阈值"""
        settings = LabSettings()
        points = [(0.9058, 16.8145 * 1.003), (0.7173, 15.9985 * 1.02), (0.3, 15.0)]
        deviations = compare_with_reference(FIGURE_SUBEQUILATERAL, "mu1D2", points, settings)
        self.assertEqual(len(deviations), 2)
        self.assertTrue(deviations[0].within_target)
        self.assertFalse(deviations[0].flagged)
        self.assertFalse(deviations[1].within_target)
        self.assertTrue(deviations[1].flagged)

    def test_limit_points(self):
        """测试退化端点的极限值：亚等边族趋于 j11²"""
        end, value = LIMIT_POINTS[FIGURE_SUBEQUILATERAL]["mu1D2"]
        self.assertEqual(end, 0.0)
        self.assertLess(abs(value - J11 ** 2) / J11 ** 2, 1e-4)
        self.assertEqual(LIMIT_POINTS[FIGURE_SUPEREQUILATERAL]["musD2"][0], math.pi)

    def test_limit_approach(self):
        """测试计算值随孔径趋向端点而趋近极限值"""
        good = limit_approach(FIGURE_SUBEQUILATERAL, "mu1D2", [(0.1047, 14.7089), (0.5288, 15.3850)])
        self.assertTrue(good["approaching"])
        self.assertEqual(good["apertures"], [0.5288, 0.1047])
        self.assertAlmostEqual(good["distances"][1], 14.7089 - 14.682, places=10)

        bad = limit_approach(FIGURE_SUBEQUILATERAL, "mu1D2", [(0.1047, 15.5), (0.5288, 15.3850)])
        self.assertFalse(bad["approaching"])

        sym = limit_approach(FIGURE_SUPEREQUILATERAL, "musD2", [(2.0296, 51.6706), (1.5708, 39.4785)])
        self.assertTrue(sym["approaching"])
        self.assertIsNone(limit_approach(FIGURE_SUBEQUILATERAL, "muaD2", [(0.9529, 20.3)]))
        with self.assertRaises(DomainError):
            limit_approach(4, "mu1D2", [])

    def test_figure_records_rows(self):
        """测试图数据集的每一行（求解部分用 mock 替换）"""
        tone = ExtrapolatedTone(value=20.0, error_estimate=1e-4, levels_used=[4, 8, 16], observed_order=2.0)
        with mock.patch("core.sweep.extrapolate_tone", return_value=tone):
            records = figure_records(FIGURE_SUPEREQUILATERAL, 2, settings=LabSettings())
        self.assertEqual([r.aperture for r in records], figure_apertures(FIGURE_SUPEREQUILATERAL, 2))
        last = records[-1]
        d2 = (2 * math.sin(last.aperture / 2)) ** 2
        self.assertAlmostEqual(last.mu1D2, 20.0 * d2, places=12)
        self.assertEqual(list(last.bounds), ["prop1d_lower", "prop1d_improved_lower", "cheng_upper"])
        self.assertIsNone(last.muaD2)
        with self.assertRaises(DomainError):
            figure_records(5, 2, settings=LabSettings())


if __name__ == "__main__":
    unittest.main()
