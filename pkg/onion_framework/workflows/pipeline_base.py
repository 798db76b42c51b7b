"""
流水线基础类
子类只实现 run()；execute() 负责阶段记录、计时与异常日志
"""

import time
import traceback
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional

from ..core.utils import OnionException, OnionLogger
from ..config.settings import get_config, get_settings


class PipelineBase(ABC):
    """多阶段算法的公共骨架，Inconclusive 作为返回值，缺陷作为异常"""

    def __init__(self, name: Optional[str] = None, debug_mode: bool = False):
        """
        Args:
            name: 日志器名称，默认取类名
            debug_mode: 异常时额外输出堆栈，也可由 general.debug_mode 打开
        """
        self.name = name or type(self).__name__
        self.debug_mode = debug_mode or get_config('general.debug_mode', False)
        self.settings = get_settings()
        self.logger = OnionLogger.get_logger(self.name)

        self._active = False
        self.stages: List[str] = []
        self.inconclusive_count = 0
        self.started_at: Optional[float] = None
        self.finished_at: Optional[float] = None

    @abstractmethod
    def run(self) -> Any:
        """返回结果模型或 Inconclusive"""

    def execute(self) -> Any:
        """运行一次 run()；不可重入，异常原样抛出"""
        if self._active:
            raise OnionException(f"流水线 {self.name} 正在运行中", "PIPELINE_BUSY")

        self._active = True
        self.stages = []
        self.inconclusive_count = 0
        self.started_at = time.perf_counter()
        try:
            self._log_stage("开始")
            outcome = self.run()
            self._log_stage(f"结束: {type(outcome).__name__}")
            return outcome
        except OnionException as e:
            self.logger.error(f"[{self.name}] {e.error_code}: {e.message}")
            if self.debug_mode:
                self.logger.error(traceback.format_exc())
            raise
        finally:
            self._active = False
            self.finished_at = time.perf_counter()
            self.logger.debug(f"[{self.name}] 用时 {self.finished_at - self.started_at:.3f}s")

    def _log_stage(self, message: str):
        self.stages.append(message)
        self.logger.info(f"[{self.name}] {message}")

    def _log_inconclusive(self, stage: str, reason: str):
        self.inconclusive_count += 1
        self._log_stage(f"未决 @ {stage}: {reason}")

    def get_execution_summary(self) -> Dict[str, Any]:
        """最近一次 execute() 的名称、阶段数、未决次数与用时"""
        elapsed = 0.0
        if self.started_at is not None and self.finished_at is not None:
            elapsed = self.finished_at - self.started_at
        return {
            "name": self.name,
            "stages": len(self.stages),
            "inconclusive_count": self.inconclusive_count,
            "duration": elapsed,
        }
