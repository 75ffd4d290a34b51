"""配置管理模块"""

from .models import GalleryConfig, LoggingConfig, RunnerConfig, SolverConfig
from .manager import FORMATS, ConfigManager

__all__ = [
    'GalleryConfig',
    'LoggingConfig',
    'RunnerConfig',
    'SolverConfig',
    'FORMATS',
    'ConfigManager',
]
