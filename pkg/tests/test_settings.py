"""
测试配置加载与校验
"""

import os
import shutil
import tempfile
import unittest
from unittest import mock

from core.errors import SettingsError
from core.settings import (
    DEFAULT_SETTINGS_PATH,
    THREADS_ENV,
    LabSettings,
    get_settings,
    load_settings,
    set_settings,
)


class TestLabSettings(unittest.TestCase):
    """测试 LabSettings"""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)
        set_settings(None)

    def _write(self, text: str) -> str:
        path = os.path.join(self.temp_dir, "lab_settings.yaml")
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
        return path

    def test_defaults(self):
        """测试内置默认值"""
        settings = LabSettings()
        self.assertEqual(settings.levels_for(), [32, 64, 128])
        self.assertEqual(settings.levels_for("fast"), [16, 32, 64])
        self.assertEqual(settings.slack_factor, 3.0)
        self.assertEqual(settings.fem_aperture_floor, 0.05)
        self.assertEqual(settings.solver.direct_limit, 20000)

    def test_repository_file_matches_defaults(self):
        """测试仓库自带的配置文件与内置默认值一致"""
        self.assertTrue(DEFAULT_SETTINGS_PATH.exists())
        self.assertEqual(load_settings(str(DEFAULT_SETTINGS_PATH)), LabSettings())

    def test_load_yaml(self):
        """测试从 YAML 加载部分覆盖"""
        path = self._write("default_budget: fast\nslack_factor: 5\nsolver:\n  direct_limit: 100\n")
        settings = load_settings(path)
        self.assertEqual(settings.levels_for(), [16, 32, 64])
        self.assertEqual(settings.slack_factor, 5.0)
        self.assertEqual(settings.solver.direct_limit, 100)
        self.assertEqual(settings.solver.shift, -0.01)

    def test_invalid_budget(self):
        """测试层级比不是 2 或少于 3 层"""
        with self.assertRaises(SettingsError):
            load_settings(self._write("budgets:\n  fast: [16, 32, 60]\ndefault_budget: fast\n"))
        with self.assertRaises(SettingsError):
            load_settings(self._write("budgets:\n  fast: [16, 32]\ndefault_budget: fast\n"))

    def test_unknown_default_budget(self):
        """测试默认预算未定义"""
        with self.assertRaises(SettingsError):
            load_settings(self._write("default_budget: huge\n"))

    def test_unknown_budget_lookup(self):
        """测试查询未知预算"""
        with self.assertRaises(SettingsError):
            LabSettings().levels_for("huge")

    def test_broken_yaml(self):
        """测试无法解析的 YAML"""
        with self.assertRaises(SettingsError):
            load_settings(self._write("budgets: [unclosed\n"))

    def test_missing_explicit_file(self):
        """测试显式给出的文件不存在"""
        with self.assertRaises(SettingsError):
            load_settings(os.path.join(self.temp_dir, "missing.yaml"))

    def test_thread_override(self):
        """测试环境变量覆盖线程数，无效值被忽略"""
        settings = LabSettings(threads=2)
        with mock.patch.dict(os.environ, {THREADS_ENV: "6"}):
            self.assertEqual(settings.thread_count(), 6)
        with mock.patch.dict(os.environ, {THREADS_ENV: "many"}):
            self.assertEqual(settings.thread_count(), 2)
        with mock.patch.dict(os.environ, {THREADS_ENV: "0"}):
            self.assertEqual(settings.thread_count(), 1)

    def test_global_instance(self):
        """测试全局配置的替换与缓存"""
        custom = LabSettings(slack_factor=7.0)
        set_settings(custom)
        self.assertIs(get_settings(), custom)
        set_settings(None)
        self.assertIs(get_settings(), get_settings())


if __name__ == "__main__":
    unittest.main()
