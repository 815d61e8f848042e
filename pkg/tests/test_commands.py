"""
测试命令系统和命令行入口
"""

import io
import json
import math
import os
import shutil
import tempfile
import unittest
from unittest import mock

from commands import create_command_manager, get_command_help
from commands.command_base import EXIT_FAILED, EXIT_OK, EXIT_USAGE
from core.acceptance import AcceptanceContext, AcceptanceResult, run_acceptance, run_check
from core.bounds import ChainResult, ChainStep
from core.errors import DomainError
from core.fem import ExtrapolatedTone
from core.logging_system import reset_logging
from core.settings import LabSettings, set_settings
from core.sweep import SweepRecord
import main as entry


def _tone(value, fallback=None):
    return ExtrapolatedTone(value=value, error_estimate=1e-5, levels_used=[4, 8, 16],
                            observed_order=2.0, fallback=fallback)


class TestCommandManager(unittest.TestCase):
    """测试命令解析、路由和退出码"""

    def setUp(self):
        set_settings(LabSettings())
        self.manager = create_command_manager()
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        set_settings(None)
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def test_registered_commands(self):
        """测试注册的命令"""
        self.assertEqual(set(self.manager.commands),
                         {"help", "solve", "figure", "audit", "chain", "bessel", "selftest"})

    def test_missing_and_unknown(self):
        """测试缺少命令和未知命令"""
        self.assertEqual(self.manager.execute([]).exit_code, EXIT_USAGE)
        result = self.manager.execute(["plot"])
        self.assertEqual(result.exit_code, EXIT_USAGE)
        self.assertIn("未知命令", result.text)

    def test_argument_errors(self):
        """测试参数错误返回 2"""
        self.assertEqual(self.manager.execute(["bessel"]).exit_code, EXIT_USAGE)
        self.assertEqual(self.manager.execute(["solve", "--aperture", "1", "--budget", "huge"]).exit_code,
                         EXIT_USAGE)
        self.assertEqual(self.manager.execute(["solve", "--aperture", "1", "--vertices", "0,0,1,0,0,1"]).exit_code,
                         EXIT_USAGE)

    def test_help(self):
        """测试 help 与 help <命令>"""
        text = get_command_help()
        self.assertIn("solve", text)
        self.assertIn("selftest", text)
        self.assertIn("--aperture", self.manager.execute(["help", "solve"]).text)
        self.assertEqual(self.manager.execute(["help", "plot"]).exit_code, EXIT_USAGE)

    def test_bessel(self):
        """测试 Bessel 查询"""
        self.assertEqual(self.manager.execute(["bessel", "--zero", "J0", "1"]).text, "2.4048255577")
        self.assertEqual(self.manager.execute(["bessel", "--zero", "J1", "1"]).text, "3.8317059702")
        self.assertEqual(self.manager.execute(["bessel", "--jprime", "1"]).text, "1.8411837813")
        self.assertTrue(self.manager.execute(["bessel", "--crossing"]).text.startswith("2.674"))
        self.assertEqual(self.manager.execute(["bessel", "--value", "0", "0"]).text, "1")

    def test_bessel_domain_errors(self):
        """测试 Bessel 定义域错误返回 2"""
        for argv in (["bessel", "--zero", "J2", "1"], ["bessel", "--zero", "J0", "0"],
                     ["bessel", "--zero", "J0", "x"], ["bessel", "--jprime", "1", "2"],
                     ["bessel", "--value", "0", "-1"]):
            result = self.manager.execute(argv)
            self.assertEqual(result.exit_code, EXIT_USAGE, argv)
            self.assertTrue(result.text.startswith("❌"), argv)

    def test_solve_json(self):
        """测试 solve 的 JSON 输出和度数换算"""
        with mock.patch("commands.solve_command.extrapolate_tone",
                        return_value=_tone(16 * math.pi ** 2 / 9)) as fake:
            result = self.manager.execute(["solve", "--aperture", "60", "--degrees", "--format", "json"])
        self.assertEqual(result.exit_code, EXIT_OK)
        report = json.loads(result.text)
        self.assertAlmostEqual(report["aperture"], math.pi / 3, places=12)
        self.assertAlmostEqual(report["tone_D2"], 16 * math.pi ** 2 / 9, places=10)
        self.assertTrue(all(e["satisfied"] for e in report["bounds"]))
        self.assertAlmostEqual(fake.call_args[0][0].aperture, math.pi / 3, places=12)

    def test_solve_table_and_files(self):
        """测试 solve 的表格输出和 --out 写出"""
        out = os.path.join(self.temp_dir, "report.json")
        tone = _tone(15.0, fallback={"lower": 14.6, "upper": 15.2})
        with mock.patch("commands.solve_command.extrapolate_tone", return_value=tone):
            result = self.manager.execute(["solve", "--aperture", "0.03", "--out", out])
        self.assertEqual(result.exit_code, EXIT_OK)
        self.assertIn("⚠️", result.text)
        with open(out, encoding="utf-8") as f:
            self.assertEqual(json.load(f)["tone"]["fallback"], {"lower": 14.6, "upper": 15.2})

    def test_solve_bad_input(self):
        """测试无法解析的顶点、退化三角形和超出范围的孔径"""
        for argv in (["solve", "--vertices", "0,0,1"], ["solve", "--vertices", "0,0,1,0,2,0"],
                     ["solve", "--aperture", "4"]):
            self.assertEqual(self.manager.execute(argv).exit_code, EXIT_USAGE, argv)

    def test_figure(self):
        """测试 figure 写出 CSV"""
        records = [SweepRecord(aperture=math.pi / 3, mu1D2=17.55, muaD2=17.55, error_estimate=1e-5)]
        out = os.path.join(self.temp_dir, "fig2.csv")
        with mock.patch("commands.figure_command.figure_records", return_value=records):
            result = self.manager.execute(["figure", "2", "--out", out])
        self.assertEqual(result.exit_code, EXIT_OK)
        self.assertTrue(os.path.exists(out))
        self.assertIn("mu1D2", result.text)
        self.assertEqual(self.manager.execute(["figure", "2"]).exit_code, EXIT_USAGE)

    def test_audit(self):
        """测试 audit 的退出码和 JSON 报告"""
        good = mock.Mock(chain_ok=True)
        good.warnings.return_value = []
        good.to_dict.return_value = {"chain_ok": True}
        bad = mock.Mock(chain_ok=False)
        bad.warnings.return_value = []
        bad.failures.return_value = [mock.Mock()]
        bad.failures.return_value[0].name = "cheng_upper"
        bad.to_dict.return_value = {"chain_ok": False}

        out = os.path.join(self.temp_dir, "audit.json")
        with mock.patch("commands.audit_command.audit_batch", return_value=[("random_000", good)]):
            result = self.manager.execute(["audit", "--count", "1", "--out", out])
        self.assertEqual(result.exit_code, EXIT_OK)
        with open(out, encoding="utf-8") as f:
            payload = json.load(f)
        self.assertTrue(payload["all_chain_ok"])
        self.assertEqual(payload["reports"][0]["label"], "random_000")

        with mock.patch("commands.audit_command.audit_batch",
                        return_value=[("random_000", good), ("equilateral", bad)]):
            result = self.manager.execute(["audit", "--count", "1"])
        self.assertEqual(result.exit_code, EXIT_FAILED)
        self.assertIn("cheng_upper", result.text)

    def test_chain(self):
        """测试 chain 输出和非单调时的退出码"""
        steps = [ChainStep(0, math.pi / 3, 17.546, 1e-5, 7.68, 19.57),
                 ChainStep(1, 0.72, 16.0, 1e-5, 12.0, 17.0, decreasing=True)]
        with mock.patch("commands.chain_command.bisect_stretch_chain", return_value=ChainResult(steps)):
            result = self.manager.execute(["chain", "--steps", "1"])
        self.assertEqual(result.exit_code, EXIT_OK)
        self.assertIn("j11²", result.text)

        steps[1].decreasing = False
        with mock.patch("commands.chain_command.bisect_stretch_chain", return_value=ChainResult(steps)):
            self.assertEqual(self.manager.execute(["chain"]).exit_code, EXIT_FAILED)

    def test_selftest(self):
        """测试 selftest 汇总和退出码"""
        results = [AcceptanceResult(1, "Bessel 根", True), AcceptanceResult(2, "等边三角形", False, error="x")]
        with mock.patch("commands.selftest_command.run_acceptance", return_value=results) as fake:
            result = self.manager.execute(["selftest", "--only", "1,2"])
        self.assertEqual(result.exit_code, EXIT_FAILED)
        self.assertIn("1/2 项通过", result.text)
        self.assertEqual(fake.call_args[0][0], [1, 2])
        self.assertEqual(self.manager.execute(["selftest", "--only", "1,x"]).exit_code, EXIT_USAGE)


class TestAcceptance(unittest.TestCase):
    """测试验收检查的调度"""

    def test_bessel_check(self):
        """测试 Bessel 检查通过"""
        result = run_check(1, AcceptanceContext(settings=LabSettings()))
        self.assertTrue(result.passed)
        self.assertIsNone(result.error)
        self.assertNotIn("passed", result.details)

    def test_unknown_check(self):
        """测试未知编号"""
        with self.assertRaises(DomainError):
            run_acceptance([99], settings=LabSettings())

    def test_error_is_captured(self):
        """测试检查内部的异常记为失败"""
        def boom(ctx):
            raise RuntimeError("坏了")

        with mock.patch.dict("core.acceptance.CHECKS", {1: ("Bessel 根", boom)}):
            results = run_acceptance([1], settings=LabSettings())
        self.assertFalse(results[0].passed)
        self.assertEqual(results[0].error, "坏了")


class TestMain(unittest.TestCase):
    """测试命令行入口"""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        reset_logging()
        set_settings(None)
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def test_bessel_through_main(self):
        """测试全局选项与命令一起解析"""
        with mock.patch("sys.stdout", new_callable=io.StringIO) as out:
            code = entry.main(["--log-level", "ERROR", "bessel", "--zero", "J0", "1"])
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.getvalue().strip(), "2.4048255577")

    def test_bad_settings_file(self):
        """测试配置文件无效时返回 2"""
        path = os.path.join(self.temp_dir, "bad.yaml")
        with open(path, "w", encoding="utf-8") as f:
            f.write("slack_factor: -1\n")
        with mock.patch("sys.stdout", new_callable=io.StringIO) as out:
            code = entry.main(["--settings", path, "bessel", "--crossing"])
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("❌", out.getvalue())

    def test_no_command(self):
        """测试没有命令"""
        with mock.patch("sys.stdout", new_callable=io.StringIO):
            self.assertEqual(entry.main(["--log-level", "ERROR"]), EXIT_USAGE)


if __name__ == "__main__":
    unittest.main()
