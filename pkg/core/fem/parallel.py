"""
独立求解的并发调度

各次求解之间不共享可变状态；结果按输入顺序返回，线程数为 1 时直接串行执行。
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from core.settings import LabSettings, get_settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(func: Callable[[T], R], items: Iterable[T],
                threads: Optional[int] = None,
                settings: Optional[LabSettings] = None) -> List[R]:
    """
    并发执行 func 并按输入顺序收集结果

    Args:
        func: 单次求解
        items: 输入序列
        threads: 线程数，None 时取配置（环境变量优先）
        settings: 配置

    Returns:
        List: 与 items 一一对应的结果；任一任务的异常原样抛出
    """
    items = list(items)
    if threads is None:
        threads = (settings or get_settings()).thread_count()
    threads = max(1, min(int(threads), len(items) or 1))
    if threads == 1:
        return [func(item) for item in items]
    logger.debug(f"并发求解 {len(items)} 个任务，{threads} 个线程")
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))
