"""
配置数据类定义
"""

from dataclasses import dataclass, field
from typing import List


@dataclass
class SolverConfig:
    """试探解配置"""
    degree_bound: int = 3  # x 上多项式次数上限


@dataclass
class RunnerConfig:
    """检查运行器配置"""
    jobs: int = 4
    format: str = "text"  # "text" 或 "json"
    check_timeout: float = 120.0  # 单个检查的超时（秒）


@dataclass
class GalleryConfig:
    """画廊场景目录"""
    directories: List[str] = field(default_factory=lambda: ["./gallery"])
    pattern: str = "*.json"


@dataclass
class LoggingConfig:
    level: str = "INFO"
