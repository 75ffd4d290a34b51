"""
画廊场景扫描器
"""

from pathlib import Path
from typing import Dict, List, Optional

from ..errors import ScenarioError
from .scenario import Scenario, parse_scenario


class GalleryScanner:
    """递归扫描场景目录"""

    def __init__(self, base_dirs: List[str], pattern: str = "*.json"):
        self.base_dirs = [Path(d).resolve() for d in base_dirs]
        self.pattern = pattern
        self.scenarios: Dict[str, Scenario] = {}

    def scan_all(self) -> Dict[str, Scenario]:
        """扫描所有目录，解析每个场景；同名场景保留先发现的"""
        self.scenarios.clear()

        for base_dir in self.base_dirs:
            if not base_dir.exists():
                print(f"⚠️ 目录不存在: {base_dir}")
                continue

            for path in sorted(base_dir.rglob(self.pattern)):
                if any(part.startswith('.') for part in path.relative_to(base_dir).parts):
                    continue
                scenario = self._parse(path)
                if scenario and scenario.name not in self.scenarios:
                    self.scenarios[scenario.name] = scenario

        print(f"🔍 扫描完成，发现 {len(self.scenarios)} 个场景")
        for name, scenario in sorted(self.scenarios.items()):
            print(f"   - {name}: n = {scenario.n}, {len(scenario.checks)} 项检查")

        return self.scenarios

    def _parse(self, path: Path) -> Optional[Scenario]:
        try:
            return parse_scenario(path)
        except ScenarioError as e:
            print(f"⚠️ 解析场景失败 {path}: {e}")
            return None
