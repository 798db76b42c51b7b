"""
Onion Framework 基础工具函数模块
异常体系、彩色日志、异常装饰器、确定性 JSON 与文本读写
"""

import os
import json
import logging
import functools
import traceback
import inspect
from datetime import datetime
from pathlib import Path
from typing import Optional, Dict, Any

import colorlog

from ..config.settings import get_settings


class OnionException(Exception):
    """框架自定义异常基类"""
    def __init__(self, message: str, error_code: str = "ONION_ERROR"):
        self.message = message
        self.error_code = error_code
        super().__init__(self.message)


class ContractViolation(OnionException):
    """调用方违反前置条件"""
    def __init__(self, message: str, error_code: str = "CONTRACT_VIOLATION"):
        super().__init__(message, error_code)


class ArcNotFoundError(ContractViolation):
    """弧编号不在有向图中"""
    def __init__(self, arc: int):
        self.arc = arc
        super().__init__(f"弧 {arc} 不存在于有向图中", "ARC_NOT_FOUND")


class AnchorNotFoundError(ContractViolation):
    """裁剪锚点不在路径上"""
    def __init__(self, arc: int):
        self.arc = arc
        super().__init__(f"锚点弧 {arc} 不在路径上", "ANCHOR_NOT_FOUND")


class ParseError(OnionException):
    """文本格式解析失败"""
    def __init__(self, message: str, line_number: int):
        self.line_number = line_number
        super().__init__(f"第 {line_number} 行: {message}", "PARSE_ERROR")


class OracleRefusal(OnionException):
    """实例规模超出暴力验证器上限"""
    def __init__(self, arcs: int, cap: int):
        self.arcs = arcs
        self.cap = cap
        super().__init__(f"弧数 {arcs} 超过上限 {cap}，拒绝暴力搜索", "ORACLE_REFUSAL")


class AlgorithmDefect(OnionException):
    """内部断言失败（算法缺陷，必须大声报告）"""
    def __init__(self, message: str, error_code: str = "DEFECT"):
        super().__init__(message, error_code)


class OnionLogger:
    """日志管理器"""

    _instances: Dict[str, "OnionLogger"] = {}
    _master_logger: Optional[logging.Logger] = None

    def __init__(self, name: str = "ONION"):
        self.name = name
        self.config = get_settings().logging
        self.log_dir = None
        if self.config.log_to_file:
            project_root = Path(__file__).parent.parent
            self.log_dir = project_root / self.config.log_dir
            self.log_dir.mkdir(parents=True, exist_ok=True)
        self._setup_logger()
        if self.log_dir is not None and self.config.enable_master_log:
            self._setup_master_logger()

    @classmethod
    def get_logger(cls, name: str = "ONION") -> 'OnionLogger':
        """按名称缓存，同名返回同一个 OnionLogger"""
        if name not in cls._instances:
            cls._instances[name] = cls(name)
        return cls._instances[name]

    def _setup_master_logger(self):
        """进程内只建一次 ONION_MASTER 文件日志"""
        if OnionLogger._master_logger is None:
            master_logger = logging.getLogger("ONION_MASTER")
            master_logger.setLevel(logging.DEBUG)
            master_logger.propagate = False
            master_logger.handlers.clear()

            master_log_file = self.log_dir / f"all_logs_{datetime.now().strftime('%Y%m%d')}.log"
            master_file_handler = logging.FileHandler(master_log_file, encoding='utf-8')
            master_file_handler.setLevel(logging.DEBUG)
            master_file_handler.setFormatter(logging.Formatter(self.config.master_log_format))
            master_logger.addHandler(master_file_handler)

            OnionLogger._master_logger = master_logger

    def _setup_logger(self):
        """终端 colorlog 处理器，写文件时再挂模块日志"""
        self.logger = logging.getLogger(self.name)
        self.logger.setLevel(getattr(logging, str(self.config.level).upper(), logging.INFO))
        self.logger.propagate = False
        self.logger.handlers.clear()

        # 控制台处理器（彩色输出到 stderr）
        console_handler = colorlog.StreamHandler()
        console_handler.setFormatter(colorlog.ColoredFormatter(
            self.config.console_format,
            datefmt=self.config.date_format,
            log_colors={
                'DEBUG': 'cyan',
                'INFO': 'green',
                'WARNING': 'yellow',
                'ERROR': 'red',
                'CRITICAL': 'red,bg_white',
            }
        ))
        self.logger.addHandler(console_handler)

        # 模块日志文件
        if self.log_dir is not None:
            log_file = self.log_dir / f"{self.name}_{datetime.now().strftime('%Y%m%d')}.log"
            file_handler = logging.FileHandler(log_file, encoding='utf-8')
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(logging.Formatter(self.config.file_format))
            self.logger.addHandler(file_handler)

    def _log_to_master(self, level: int, message: str, filename: str, lineno: int):
        """镜像到 ONION_MASTER，带模块名"""
        if OnionLogger._master_logger:
            extra = {
                'module_name': self.name,
                'caller_file': filename,
                'caller_line': lineno
            }
            OnionLogger._master_logger.log(level, message, extra=extra)

    def _get_caller_info(self):
        """回溯三层栈帧取调用方位置"""
        frame = inspect.currentframe()
        try:
            # 跳过: _get_caller_info -> _emit -> debug/info/... -> 真实调用者
            caller = frame
            for _ in range(3):
                caller = caller.f_back if caller else None
            if caller:
                return os.path.basename(caller.f_code.co_filename), caller.f_lineno
            return "unknown", 0
        finally:
            del frame

    def _emit(self, level: int, message: str):
        if not self.logger.isEnabledFor(level) and OnionLogger._master_logger is None:
            return
        filename, lineno = self._get_caller_info()
        self.logger.log(level, message, extra={'caller_file': filename, 'caller_line': lineno})
        self._log_to_master(level, message, filename, lineno)

    def debug(self, message: str):
        self._emit(logging.DEBUG, message)

    def info(self, message: str):
        self._emit(logging.INFO, message)

    def warning(self, message: str):
        self._emit(logging.WARNING, message)

    def error(self, message: str):
        self._emit(logging.ERROR, message)

    def critical(self, message: str):
        self._emit(logging.CRITICAL, message)


class ErrorHandler:
    """把任意异常收敛为 OnionException 的装饰器工厂"""

    def __init__(self, logger: OnionLogger):
        self.logger = logger

    def handle_exception(self, func):
        """异常处理装饰器：记录框架异常后重新抛出，未知异常包装为 OnionException"""
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except OnionException as e:
                self.logger.error(f"框架异常: {e.error_code} - {e.message}")
                raise
            except OSError as e:
                self.logger.error(f"IO异常: {e}")
                raise OnionException(f"IO异常: {e}", "IO_ERROR") from e
            except Exception as e:
                error_msg = f"未知异常: {str(e)}"
                self.logger.error(f"{error_msg}\n{traceback.format_exc()}")
                raise OnionException(error_msg, "UNKNOWN_ERROR") from e
        return wrapper


# 全局实例
logger = OnionLogger.get_logger()
error_handler = ErrorHandler(logger)


def ensure_directory(path: str):
    """按需创建父目录，空路径忽略"""
    if path:
        Path(path).mkdir(parents=True, exist_ok=True)


def dump_json(data: Dict[str, Any], indent: Optional[int] = None) -> str:
    """确定性 JSON 序列化（键排序），相同输入得到逐字节相同的输出"""
    if indent is None:
        indent = get_settings().export.json_indent
    return json.dumps(data, ensure_ascii=False, indent=indent, sort_keys=True)


def read_text(filepath: str) -> str:
    """读取文本文件"""
    try:
        with open(filepath, 'r', encoding='utf-8') as f:
            return f.read()
    except OSError as e:
        raise OnionException(f"读取文件失败: {e}", "IO_ERROR")


def write_text(text: str, filepath: str):
    """写入文本文件"""
    try:
        ensure_directory(os.path.dirname(filepath))
        with open(filepath, 'w', encoding='utf-8') as f:
            f.write(text)
    except OSError as e:
        raise OnionException(f"写入文件失败: {e}", "IO_ERROR")
