"""
tritone 日志系统模块

提供统一格式的日志输出，控制台输出走 stderr（stdout 只留给命令结果），
文件日志按小时轮转，格式: log-YYYY-MM-DD-HH.log

功能特性:
- 只有显式给出日志目录时才写日志文件（不产生隐式文件）
- 支持多个日志级别 (DEBUG, INFO, WARNING, ERROR, CRITICAL)
- 统一的日志格式
- 按天数清理旧日志

使用方式:
    from core.logging_system import setup_logging, get_logger

    # 程序启动时初始化日志
    setup_logging(level="INFO", console_output=True)

    # 在各模块中使用
    logger = get_logger(__name__)
    logger.info("开始求解")
"""

import logging
import logging.handlers
import sys
from datetime import datetime
from pathlib import Path
from typing import List, Optional


class HourlyRotatingFileHandler(logging.handlers.TimedRotatingFileHandler):
    """
    按小时轮转的文件处理器

    生成格式为 log-YYYY-MM-DD-HH.log 的日志文件
    """

    def __init__(self, logs_dir: str):
        self.logs_dir = Path(logs_dir)
        self.logs_dir.mkdir(parents=True, exist_ok=True)

        filepath = self.logs_dir / self._get_log_filename(datetime.now())

        super().__init__(
            filename=str(filepath),
            when='H',
            interval=1,
            backupCount=24 * 7,
            encoding='utf-8'
        )
        self.namer = self._generate_filename

    def _get_log_filename(self, dt: datetime) -> str:
        """生成日志文件名"""
        return f"log-{dt.strftime('%Y-%m-%d-%H')}.log"

    def _generate_filename(self, default_name: str) -> str:
        """轮转后的文件名沿用按小时命名"""
        return str(self.logs_dir / self._get_log_filename(datetime.now()))


class TriToneFormatter(logging.Formatter):
    """
    tritone 日志格式化器
    """

    def __init__(self):
        fmt = '[%(asctime)s] %(levelname)-8s %(name)-20s %(message)s'
        datefmt = '%Y-%m-%d %H:%M:%S'
        super().__init__(fmt=fmt, datefmt=datefmt)


class LoggingSystem:
    """
    tritone 日志系统管理器
    """

    def __init__(self):
        self.logs_dir: Optional[Path] = None
        self.is_initialized = False
        self._handlers: List[logging.Handler] = []

    def setup(self,
              level: str = 'INFO',
              console_output: bool = True,
              logs_dir: Optional[str] = None) -> None:
        """
        初始化日志系统

        Args:
            level: 日志级别 ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')
            console_output: 是否输出到控制台 (stderr)
            logs_dir: 日志文件目录，None 表示不写文件
        """
        if self.is_initialized:
            return

        numeric_level = getattr(logging, level.upper(), logging.INFO)

        root_logger = logging.getLogger()
        root_logger.setLevel(numeric_level)

        if logs_dir:
            self.logs_dir = Path(logs_dir)
            file_handler = HourlyRotatingFileHandler(str(self.logs_dir))
            file_handler.setLevel(numeric_level)
            file_handler.setFormatter(TriToneFormatter())
            self._attach(root_logger, file_handler)

        if console_output:
            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setLevel(numeric_level)
            console_handler.setFormatter(TriToneFormatter())
            self._attach(root_logger, console_handler)

        self.is_initialized = True

        logger = logging.getLogger(__name__)
        logger.debug(f"日志系统初始化完成，级别: {level}，控制台输出: {console_output}")
        if self.logs_dir:
            logger.info(f"日志目录: {self.logs_dir.absolute()}")

    def _attach(self, root_logger: logging.Logger, handler: logging.Handler) -> None:
        root_logger.addHandler(handler)
        self._handlers.append(handler)

    def reset(self) -> None:
        """移除本系统添加的处理器，允许重新初始化"""
        root_logger = logging.getLogger()
        for handler in self._handlers:
            root_logger.removeHandler(handler)
            handler.close()
        self._handlers.clear()
        self.logs_dir = None
        self.is_initialized = False

    def get_logger(self, name: str) -> logging.Logger:
        """
        获取命名日志器

        Args:
            name: 日志器名称，通常使用 __name__

        Returns:
            logging.Logger: 日志器
        """
        return logging.getLogger(name)

    def cleanup_old_logs(self, days_to_keep: int = 7) -> int:
        """
        清理旧的日志文件

        Args:
            days_to_keep: 保留多少天的日志

        Returns:
            int: 删除的文件数
        """
        if not self.logs_dir or not self.logs_dir.exists():
            return 0

        cutoff_time = datetime.now().timestamp() - (days_to_keep * 24 * 3600)

        cleaned_count = 0
        for log_file in self.logs_dir.glob('log-*.log'):
            if log_file.stat().st_mtime < cutoff_time:
                try:
                    log_file.unlink()
                    cleaned_count += 1
                except OSError:
                    pass

        if cleaned_count > 0:
            self.get_logger(__name__).info(f"清理了 {cleaned_count} 个旧日志文件")
        return cleaned_count

    def get_log_files(self) -> List[Path]:
        """获取所有日志文件列表"""
        if not self.logs_dir or not self.logs_dir.exists():
            return []
        return sorted(self.logs_dir.glob('log-*.log'))


# 全局日志系统实例
_logging_system = LoggingSystem()


def setup_logging(level: str = 'INFO',
                  console_output: bool = True,
                  logs_dir: Optional[str] = None) -> None:
    """
    设置 tritone 日志系统

    Args:
        level: 日志级别
        console_output: 是否输出到控制台
        logs_dir: 日志目录
    """
    _logging_system.setup(level, console_output, logs_dir)


def setup_logging_from_settings(logging_settings,
                                level: Optional[str] = None,
                                logs_dir: Optional[str] = None) -> None:
    """
    按 LoggingSettings 初始化日志，命令行给出的级别和目录优先

    Args:
        logging_settings: core.settings.LoggingSettings 实例
        level: 覆盖配置中的级别
        logs_dir: 覆盖配置中的日志目录
    """
    _logging_system.setup(level or logging_settings.level,
                          logging_settings.console_output,
                          logs_dir or logging_settings.logs_dir)


def reset_logging() -> None:
    """重置日志系统"""
    _logging_system.reset()


def get_logger(name: str) -> logging.Logger:
    """获取日志器"""
    return _logging_system.get_logger(name)


def cleanup_old_logs(days_to_keep: int = 7) -> int:
    """清理旧日志文件"""
    return _logging_system.cleanup_old_logs(days_to_keep)


def get_log_files() -> List[Path]:
    """获取所有日志文件"""
    return _logging_system.get_log_files()
