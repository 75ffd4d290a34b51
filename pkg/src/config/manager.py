"""
统一配置管理器
所有配置从 config.yaml 读取，命令行参数与场景 options 可以覆盖
"""

import os
from typing import Any, Dict, Optional

import yaml

from .models import GalleryConfig, LoggingConfig, RunnerConfig, SolverConfig

FORMATS = ("text", "json")


class ConfigManager:
    """
    统一配置管理器
    优先级：命令行参数 > 场景 options > config.yaml > 数据类默认值
    """

    def __init__(self, config_path: Optional[str] = "config.yaml"):
        self.config_path = config_path
        self.solver = SolverConfig()
        self.runner = RunnerConfig()
        self.gallery = GalleryConfig()
        self.logging = LoggingConfig()
        self._raw_config: Dict[str, Any] = {}
        if config_path is not None:
            self.load()

    @classmethod
    def defaults(cls) -> "ConfigManager":
        """不读文件，只用数据类默认值"""
        return cls(None)

    def load(self) -> None:
        """从 config.yaml 加载所有配置"""
        if os.path.exists(self.config_path):
            try:
                with open(self.config_path, 'r', encoding='utf-8') as f:
                    self._raw_config = yaml.safe_load(f) or {}

                solver_data = self._raw_config.get('solver', {}) or {}
                self.solver = SolverConfig(
                    degree_bound=int(solver_data.get('degreeBound', 3)),
                )

                runner_data = self._raw_config.get('runner', {}) or {}
                fmt = runner_data.get('format', 'text')
                if fmt not in FORMATS:
                    raise ValueError(f"runner.format 只能是 {' / '.join(FORMATS)}，得到 {fmt!r}")
                self.runner = RunnerConfig(
                    jobs=max(1, int(runner_data.get('jobs', 4))),
                    format=fmt,
                    check_timeout=float(runner_data.get('checkTimeout', 120)),
                )

                gallery_data = self._raw_config.get('gallery', {}) or {}
                self.gallery = GalleryConfig(
                    directories=list(gallery_data.get('directories', ["./gallery"])),
                    pattern=gallery_data.get('pattern', '*.json'),
                )

                logging_data = self._raw_config.get('logging', {}) or {}
                self.logging = LoggingConfig(level=str(logging_data.get('level', 'INFO')).upper())

                print(f"✅ 配置已加载: {self.config_path}")
                print(f"   🧮 试探解次数上限: {self.solver.degree_bound}")
                print(f"   ⚙️ 并发检查: {self.runner.jobs}，超时 {self.runner.check_timeout:g}s，格式 {self.runner.format}")
                print(f"   🖼️ 画廊目录: {', '.join(self.gallery.directories)} ({self.gallery.pattern})")

            except Exception as e:
                self.solver, self.runner = SolverConfig(), RunnerConfig()
                self.gallery, self.logging = GalleryConfig(), LoggingConfig()
                print(f"⚠️ 加载配置失败: {e}，使用默认配置")
        else:
            print(f"⚠️ 配置文件不存在: {self.config_path}，使用默认配置")

    def apply_overrides(self, jobs=None, fmt=None, degree_bound=None) -> None:
        """命令行参数覆盖（None 表示未给出）"""
        if jobs is not None:
            self.runner.jobs = max(1, int(jobs))
        if fmt is not None:
            self.runner.format = fmt
        if degree_bound is not None:
            self.solver.degree_bound = int(degree_bound)

    def as_dict(self) -> dict:
        """当前生效的配置（驼峰键名，与 config.yaml 对应）"""
        return {
            "solver": {"degreeBound": self.solver.degree_bound},
            "runner": {
                "jobs": self.runner.jobs,
                "format": self.runner.format,
                "checkTimeout": self.runner.check_timeout,
            },
            "gallery": {"directories": self.gallery.directories, "pattern": self.gallery.pattern},
            "logging": {"level": self.logging.level},
        }
