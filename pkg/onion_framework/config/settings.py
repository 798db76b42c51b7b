"""
Onion Framework 配置管理模块
集中管理算法上限、流水线参数、导出与日志选项

说明：
1. 各配置节使用 dataclass 描述，默认值即为桌面规模的安全取值
2. 支持 YAML 配置文件与环境变量覆盖（前缀 ONION_）
3. 支持点分隔路径的读写接口
"""

import os
import sys
import yaml
import threading
from pathlib import Path
from typing import Dict, Any, List
from dataclasses import dataclass, asdict, field


@dataclass
class GeneralSettings:
    """通用设置"""
    seed: int = 0
    debug_mode: bool = False


@dataclass
class ExtremalSettings:
    """极值搜索与界函数设置"""
    digit_cap: int = 1_000_000  # 大整数位数上限，超出即记为 Overflow


@dataclass
class OracleSettings:
    """暴力验证器设置"""
    immersion_arc_cap: int = 24
    path_arc_cap: int = 64


@dataclass
class HarvestSettings:
    """洋葱收割设置"""
    max_q_attempts: int = 0  # 0 表示尝试全部 Q 路径
    pair_order: str = "lexicographic"  # lexicographic, shuffled


@dataclass
class PipelineSettings:
    """对偶流水线设置"""
    working_threshold: int = 2
    budget: int = 2


@dataclass
class ExportSettings:
    """导出设置"""
    json_indent: int = 2
    dot_rankdir: str = "LR"
    palette: List[str] = field(default_factory=lambda: [
        "red", "blue", "darkgreen", "orange", "purple", "brown",
        "magenta", "cyan4", "gold3", "navy", "olivedrab", "deeppink",
    ])


@dataclass
class LoggingSettings:
    """日志设置"""
    level: str = "INFO"
    log_to_file: bool = False
    log_dir: str = "logs"
    console_format: str = "%(log_color)s%(asctime)s [%(levelname)s] [%(name)s] %(caller_file)s:%(caller_line)d - %(message)s"
    file_format: str = "%(asctime)s [%(levelname)s] %(caller_file)s:%(caller_line)d - %(message)s"
    master_log_format: str = "%(asctime)s [%(levelname)s] [%(module_name)s] %(caller_file)s:%(caller_line)d - %(message)s"
    date_format: str = "%H:%M:%S"
    enable_master_log: bool = True


_SECTIONS = ('general', 'extremal', 'oracle', 'harvest', 'pipeline', 'export', 'logging')


class Settings:
    """Onion Framework 配置管理器"""

    def __init__(self, config_file: str = "config/settings.yaml"):
        project_root = Path(__file__).parent.parent
        self.config_file = project_root / config_file

        self._lock = threading.RLock()

        # 环境变量前缀
        self.env_prefix = "ONION_"

        self._install_defaults()

        self.load_config()
        self.load_from_env()

    def _install_defaults(self):
        self.general = GeneralSettings()
        self.extremal = ExtremalSettings()
        self.oracle = OracleSettings()
        self.harvest = HarvestSettings()
        self.pipeline = PipelineSettings()
        self.export = ExportSettings()
        self.logging = LoggingSettings()

    def load_config(self):
        """读取 YAML 配置文件，只覆盖已知配置节"""
        if self.config_file.exists():
            try:
                with open(self.config_file, 'r', encoding='utf-8') as f:
                    config_data = yaml.safe_load(f) or {}

                for section_name in _SECTIONS:
                    if section_name in config_data:
                        self._update_dataclass(getattr(self, section_name), config_data[section_name])

            except Exception as e:
                # 标准输出保留给 JSON 结果
                print(f"警告: 加载配置文件失败，使用默认配置: {e}", file=sys.stderr)
        else:
            # 配置文件缺失时写出默认值
            self.save_config()

    def save_config(self):
        """把当前配置写回 YAML"""
        try:
            self.config_file.parent.mkdir(parents=True, exist_ok=True)
            with open(self.config_file, 'w', encoding='utf-8') as f:
                yaml.dump(self.get_all_settings(), f, default_flow_style=False,
                          allow_unicode=True, indent=2)
        except Exception as e:
            print(f"错误: 保存配置文件失败: {e}", file=sys.stderr)

    def _update_dataclass(self, obj, data: Dict[str, Any]):
        """用字典覆盖配置节中已声明的字段，未知键忽略"""
        for key, value in (data or {}).items():
            if hasattr(obj, key):
                setattr(obj, key, value)

    def get_all_settings(self) -> Dict[str, Any]:
        """按配置节导出为嵌套字典"""
        return {name: asdict(getattr(self, name)) for name in _SECTIONS}

    def reset_to_defaults(self):
        """重置为默认配置（不写回文件）"""
        with self._lock:
            self._install_defaults()

    def validate_settings(self) -> List[str]:
        """
        验证配置的有效性

        Returns:
            错误描述列表，为空表示配置有效
        """
        errors = []

        if self.general.seed < 0:
            errors.append("seed 不能为负数")
        if self.extremal.digit_cap <= 0:
            errors.append("digit_cap 必须大于 0")
        if self.oracle.immersion_arc_cap <= 0:
            errors.append("immersion_arc_cap 必须大于 0")
        if self.oracle.path_arc_cap <= 0:
            errors.append("path_arc_cap 必须大于 0")
        if self.harvest.max_q_attempts < 0:
            errors.append("max_q_attempts 不能为负数")
        if self.harvest.pair_order not in ("lexicographic", "shuffled"):
            errors.append("pair_order 只能是 lexicographic 或 shuffled")
        if self.pipeline.working_threshold <= 0:
            errors.append("working_threshold 必须大于 0")
        if self.pipeline.budget < 2:
            errors.append("budget 至少为 2")
        if not self.export.palette:
            errors.append("palette 不能为空")

        return errors

    def get(self, key: str, default: Any = None) -> Any:
        """
        按 "配置节.字段" 读取配置，路径无效时返回 default

        Args:
            key: 形如 'extremal.digit_cap' 的路径，可继续深入嵌套字典
            default: 默认值

        Returns:
            配置值

        Example:
            settings.get('extremal.digit_cap', 1000000)
        """
        with self._lock:
            parts = key.split('.')
            if len(parts) < 2:
                return default

            section = getattr(self, parts[0], None)
            if section is None or not hasattr(section, '__dataclass_fields__'):
                return default

            current: Any = asdict(section)
            for part in parts[1:]:
                if isinstance(current, dict) and part in current:
                    current = current[part]
                else:
                    return default
            return current

    def set(self, key: str, value: Any, save: bool = False) -> bool:
        """
        按 "配置节.字段" 写入配置，只接受已声明的字段

        Args:
            key: 配置键，'section.key' 格式
            value: 配置值
            save: 为 True 时同时写回配置文件

        Returns:
            是否设置成功
        """
        with self._lock:
            parts = key.split('.')
            if len(parts) != 2:
                return False

            section = getattr(self, parts[0], None)
            if section is None or not hasattr(section, parts[1]):
                return False

            setattr(section, parts[1], value)
            if save:
                self.save_config()
            return True

    def load_from_env(self):
        """应用 ONION_ 前缀的环境变量覆盖"""
        with self._lock:
            env_mappings = {
                f"{self.env_prefix}DIGIT_CAP": ("extremal.digit_cap", int),
                f"{self.env_prefix}IMMERSION_CAP": ("oracle.immersion_arc_cap", int),
                f"{self.env_prefix}PATH_CAP": ("oracle.path_arc_cap", int),
                f"{self.env_prefix}SEED": ("general.seed", int),
                f"{self.env_prefix}WORKING_THRESHOLD": ("pipeline.working_threshold", int),
                f"{self.env_prefix}BUDGET": ("pipeline.budget", int),
                f"{self.env_prefix}LOG_LEVEL": ("logging.level", str),
                f"{self.env_prefix}LOG_TO_FILE": ("logging.log_to_file", _parse_bool),
                f"{self.env_prefix}DEBUG_MODE": ("general.debug_mode", _parse_bool),
            }

            for env_key, (config_key, convert) in env_mappings.items():
                env_value = os.environ.get(env_key)
                if env_value is None:
                    continue
                try:
                    self.set(config_key, convert(env_value))
                except ValueError as e:
                    print(f"环境变量类型转换失败: {env_key} = {env_value}, 错误: {e}", file=sys.stderr)


def _parse_bool(raw: str) -> bool:
    return raw.strip().lower() in ('true', '1', 'yes', 'on')


# 全局配置实例
settings = Settings()


def get_settings() -> Settings:
    """返回进程内共享的 Settings"""
    return settings


def reload_settings():
    """重新加载配置（文件后再应用环境变量）"""
    settings.reset_to_defaults()
    settings.load_config()
    settings.load_from_env()


def get_config(key: str, default: Any = None) -> Any:
    """等价于 settings.get"""
    return settings.get(key, default)


def set_config(key: str, value: Any, save: bool = False) -> bool:
    """等价于 settings.set"""
    return settings.set(key, value, save)
