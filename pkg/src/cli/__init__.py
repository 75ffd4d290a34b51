"""场景、检查目录、并发运行与报告"""

from .scenario import Candidate, Scenario, ScenarioOptions, parse_scenario, scenario_from_dict
from .checks import (
    CATALOG, DEFAULT_CHECKS, CheckContext, CheckOutcome, CheckSpec, manifest, resolve_check_name, run_check,
)
from .report import CheckEntry, CheckReport, emit_report
from .runner import CheckRunner, run_checks
from .gallery import GalleryScanner

__all__ = [
    'Candidate',
    'Scenario',
    'ScenarioOptions',
    'parse_scenario',
    'scenario_from_dict',
    'CATALOG',
    'DEFAULT_CHECKS',
    'CheckContext',
    'CheckOutcome',
    'CheckSpec',
    'manifest',
    'resolve_check_name',
    'run_check',
    'CheckEntry',
    'CheckReport',
    'emit_report',
    'CheckRunner',
    'run_checks',
    'GalleryScanner',
]
