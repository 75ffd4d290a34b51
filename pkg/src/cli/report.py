"""
检查报告：文本（带耗时）与规范 JSON（逐字节可复现）
"""

import json
from dataclasses import dataclass, field
from typing import Dict, List

from .. import __version__

STATUSES = ("pass", "fail", "error")

_ICONS = {"pass": "✅", "fail": "❌", "error": "⚠️"}


@dataclass(frozen=True)
class CheckEntry:
    scenario: str
    name: str
    anchor: str
    status: str
    residual: str = ""
    detail: str = ""
    elapsed_ms: float = 0.0

    def as_dict(self) -> Dict[str, str]:
        """结构化字段；耗时不进入"""
        return {
            "scenario": self.scenario,
            "name": self.name,
            "anchor": self.anchor,
            "status": self.status,
            "residual": self.residual,
            "detail": self.detail,
        }


@dataclass
class CheckReport:
    entries: List[CheckEntry] = field(default_factory=list)
    elapsed_ms: float = 0.0

    def __post_init__(self):
        self.entries = sorted(self.entries, key=lambda e: (e.scenario, e.name))

    @property
    def counts(self) -> Dict[str, int]:
        return {status: sum(1 for e in self.entries if e.status == status) for status in STATUSES}

    @property
    def all_passed(self) -> bool:
        return all(e.status == "pass" for e in self.entries)

    def entry(self, scenario: str, name: str) -> CheckEntry:
        for e in self.entries:
            if e.scenario == scenario and e.name == name:
                return e
        raise KeyError(f"{scenario} :: {name}")


def _text(report: CheckReport) -> str:
    lines = [f"pwlab {__version__} 检查报告"]
    current = None
    for e in report.entries:
        if e.scenario != current:
            current = e.scenario
            lines.append("")
            lines.append(f"📐 {current}")
        lines.append(f"  {_ICONS[e.status]} {e.name}  ({e.elapsed_ms:.0f}ms)")
        lines.append(f"     {e.anchor}")
        if e.residual:
            lines.append(f"     残差: {e.residual}")
        if e.detail:
            lines.append(f"     {e.detail}")
    if report.entries:
        counts = report.counts
        lines.append("")
        lines.append("=" * 50)
        lines.append(
            f"通过 {counts['pass']} | 失败 {counts['fail']} | 出错 {counts['error']} "
            f"| 总耗时: {report.elapsed_ms:.0f}ms"
        )
    return "\n".join(lines) + "\n"


def _json(report: CheckReport) -> str:
    payload = {
        "tool": "pwlab",
        "version": __version__,
        "checks": [e.as_dict() for e in report.entries],
    }
    return json.dumps(payload, sort_keys=True, separators=(',', ':'), ensure_ascii=False) + "\n"


def emit_report(report: CheckReport, fmt: str = "text") -> bytes:
    """text 为人读格式；json 为规范格式，不含耗时"""
    if fmt == "json":
        return _json(report).encode("utf-8")
    if fmt == "text":
        return _text(report).encode("utf-8")
    raise ValueError(f"未知报告格式 {fmt!r}")
