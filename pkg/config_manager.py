#!/usr/bin/env python3
"""
量子迹计算系统 - 配置管理器
负责管理系统配置与计算参数（交叉数上限、边点数上限、随机种子、双角墙约定）
"""

import json
import logging
from dataclasses import dataclass, asdict, fields
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional


class ConfigType(Enum):
    """配置类型枚举"""
    SYSTEM = "system"
    COMPUTE = "compute"


@dataclass
class SystemConfig:
    """系统配置"""
    name: str = "量子迹计算系统"
    version: str = "1.0.0"
    environment: str = "development"  # development, ci
    log_level: str = "WARNING"
    debug_mode: bool = False


@dataclass
class ComputeConfig:
    """计算配置"""
    max_crossings: int = 16            # Kauffman 展开允许的最大交叉数
    max_side_points: int = 24          # 状态和允许的三角形边点总数
    default_seed: int = 20240521       # 随机性质检查的默认种子
    random_trials: int = 20            # 每个夹具的随机剪切坐标组数
    biangle_return_wall: int = 1       # α/β 权重所附的墙（1 为默认，0 为镜像）
    float_tolerance: float = 1e-9      # 经典数值比较的相对误差
    parallel_workers: int = 1          # 朴素状态和的线程数


class ConfigManager:
    """配置管理器"""

    def __init__(self, config_dir: Optional[str] = None):
        self.config_dir = Path(config_dir) if config_dir else Path(__file__).parent / "config"
        self.config_dir.mkdir(parents=True, exist_ok=True)

        # 配置文件路径
        self.system_config_path = self.config_dir / "system_config.json"
        self.compute_config_path = self.config_dir / "compute_config.json"

        # 配置缓存
        self._config_cache: Dict[str, Dict[str, Any]] = {}

        # 日志
        self.logger = logging.getLogger('ConfigManager')

        self._initialize_configs()

    def _initialize_configs(self):
        """初始化配置文件"""
        try:
            if not self.system_config_path.exists():
                self._save_config(self.system_config_path, asdict(SystemConfig()))
            if not self.compute_config_path.exists():
                self._save_config(self.compute_config_path, asdict(ComputeConfig()))
            self._load_all_configs()
        except Exception as e:
            self.logger.error(f"初始化配置失败: {e}")
            raise

    def _save_config(self, file_path: Path, config_data: Dict[str, Any]):
        """保存配置到文件"""
        try:
            with open(file_path, 'w', encoding='utf-8') as f:
                json.dump(config_data, f, ensure_ascii=False, indent=2)
        except Exception as e:
            self.logger.error(f"保存配置文件失败 {file_path}: {e}")
            raise

    def _load_config(self, file_path: Path) -> Dict[str, Any]:
        """从文件加载配置"""
        try:
            if not file_path.exists():
                return {}
            with open(file_path, 'r', encoding='utf-8') as f:
                return json.load(f)
        except Exception as e:
            self.logger.error(f"加载配置文件失败 {file_path}: {e}")
            return {}

    def _load_all_configs(self):
        """加载所有配置到缓存"""
        self._config_cache = {
            ConfigType.SYSTEM.value: self._load_config(self.system_config_path),
            ConfigType.COMPUTE.value: self._load_config(self.compute_config_path),
        }

    @staticmethod
    def _known_fields(cls, data: Dict[str, Any]) -> Dict[str, Any]:
        names = {f.name for f in fields(cls)}
        return {k: v for k, v in data.items() if k in names}

    def get_system_config(self) -> SystemConfig:
        """获取系统配置"""
        config_dict = self._config_cache.get(ConfigType.SYSTEM.value, {})
        return SystemConfig(**self._known_fields(SystemConfig, config_dict))

    def get_compute_config(self) -> ComputeConfig:
        """获取计算配置"""
        config_dict = self._config_cache.get(ConfigType.COMPUTE.value, {})
        return ComputeConfig(**self._known_fields(ComputeConfig, config_dict))

    def update_config(self, config_type: ConfigType, updates: Dict[str, Any], persist: bool = False):
        """更新配置（默认只更新缓存）"""
        current = dict(self._config_cache.get(config_type.value, {}))
        current.update(updates)
        self._config_cache[config_type.value] = current
        if persist:
            path = self.system_config_path if config_type == ConfigType.SYSTEM else self.compute_config_path
            self._save_config(path, current)
        self.logger.info(f"配置已更新: {config_type.value} {sorted(updates)}")

    def validate_configs(self) -> Dict[str, List[str]]:
        """验证配置有效性"""
        errors: Dict[str, List[str]] = {}

        system_errors = []
        system = self.get_system_config()
        if system.log_level not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
            system_errors.append(f"无效的日志级别: {system.log_level}")
        if system_errors:
            errors['system'] = system_errors

        compute_errors = []
        compute = self.get_compute_config()
        if not isinstance(compute.max_crossings, int) or compute.max_crossings <= 0:
            compute_errors.append("max_crossings必须为正整数")
        if not isinstance(compute.max_side_points, int) or compute.max_side_points <= 0:
            compute_errors.append("max_side_points必须为正整数")
        if compute.random_trials <= 0:
            compute_errors.append("random_trials必须为正整数")
        if compute.biangle_return_wall not in (0, 1):
            compute_errors.append("biangle_return_wall只能为0或1")
        if compute.float_tolerance <= 0:
            compute_errors.append("float_tolerance必须为正数")
        if compute.parallel_workers < 1:
            compute_errors.append("parallel_workers至少为1")
        if compute_errors:
            errors['compute'] = compute_errors

        return errors


# 全局配置管理器实例
_config_manager: Optional[ConfigManager] = None


def get_config_manager(config_dir: Optional[str] = None) -> ConfigManager:
    """获取全局配置管理器实例"""
    global _config_manager
    if _config_manager is None:
        _config_manager = ConfigManager(config_dir)
    return _config_manager


def get_compute_config() -> ComputeConfig:
    """获取当前计算配置"""
    return get_config_manager().get_compute_config()
