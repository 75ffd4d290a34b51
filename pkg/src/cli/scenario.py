"""
场景文件（UTF-8 JSON）解析与校验

{
  "name": "E2",
  "n": 2,
  "coordinates": ["x1", "x2"],
  "connection": {"gamma": {"1,2,1": "x2"}, "volume": "1"},
  "candidates": [{"name": "alpha", "kind": "killing", "components": ["1", "0"]}],
  "checks": ["base.special", "pw.k_properties"],
  "options": {"degreeBound": 2, "jobs": 2, "scales": ["1 + x1^2"]}
}

gamma 的键是 1 起的 "A,C,B"，对应 Γ_A^C_B；只给一半时自动补对称项。
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from ..errors import PWLabError, PolynomialSyntaxError, ScenarioError
from ..projective import AffineConnection, ProjectiveSolution, SolutionKind, make_solution
from ..symcore import Scalar, TensorField, get_chart, up_t

MTILDE_VECTOR = "mtilde-vector"
MTILDE_SCALE = "mtilde-scale"
CANDIDATE_KINDS = tuple(k.value for k in SolutionKind) + (MTILDE_VECTOR, MTILDE_SCALE)


@dataclass(frozen=True)
class Candidate:
    """底流形上的解，或 M̃ 上的向量场 / 标量"""
    name: str
    kind: str
    value: Union[ProjectiveSolution, TensorField, Scalar]

    @property
    def is_base(self) -> bool:
        return isinstance(self.value, ProjectiveSolution)


@dataclass
class ScenarioOptions:
    degree_bound: Optional[int] = None
    jobs: Optional[int] = None
    scales: List[str] = field(default_factory=list)


@dataclass
class Scenario:
    name: str
    n: int
    connection: AffineConnection
    candidates: List[Candidate] = field(default_factory=list)
    checks: List[str] = field(default_factory=list)
    options: ScenarioOptions = field(default_factory=ScenarioOptions)
    path: str = ""

    def base_solutions(self, *kinds: SolutionKind) -> List[Candidate]:
        return [c for c in self.candidates if c.is_base and (not kinds or c.value.kind in kinds)]


def _expect(cond: bool, message: str, where: str, source: str) -> None:
    if not cond:
        raise ScenarioError(message, path=f"{source}:{where}" if where else source)


def _parse_text(chart, text: Any, where: str, source: str) -> Scalar:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ScenarioError(f"需要多项式字符串或整数，得到 {text!r}", path=f"{source}:{where}")
    if isinstance(text, int):
        return chart.coerce(text)
    try:
        return chart.parse(text)
    except PolynomialSyntaxError as e:
        raise ScenarioError(str(e), path=f"{source}:{where}", line=e.line, column=e.column) from e
    except PWLabError as e:
        raise ScenarioError(str(e), path=f"{source}:{where}") from e


def _parse_gamma(chart, entries: Dict[str, Any], source: str) -> Dict[tuple, Scalar]:
    n = chart.n
    table: Dict[tuple, Scalar] = {}
    for key, text in entries.items():
        where = f"connection.gamma[{key}]"
        try:
            idx = tuple(int(part) - 1 for part in key.split(","))
        except ValueError:
            raise ScenarioError(f"指标应为 'A,C,B'，得到 {key!r}", path=f"{source}:{where}")
        _expect(len(idx) == 3 and all(0 <= i < n for i in idx),
                f"指标 {key!r} 超出 1..{n}", where, source)
        value = _parse_text(chart, text, where, source)
        _expect(chart.is_x_only(value), "Γ 只能依赖 x", where, source)
        table[idx] = value

    for (a, c, b), value in list(table.items()):
        mirror = (b, c, a)
        if mirror in table:
            _expect(table[mirror] == value,
                    f"Γ 不对称: Γ_{a + 1}^{c + 1}_{b + 1} ≠ Γ_{b + 1}^{c + 1}_{a + 1}",
                    "connection.gamma", source)
        else:
            table[mirror] = value
    return table


def _nested(chart, comps: Any, shape: List[int], where: str, source: str):
    if not shape:
        return _parse_text(chart, comps, where, source)
    _expect(isinstance(comps, list) and len(comps) == shape[0],
            f"分量应为长度 {shape[0]} 的列表", where, source)
    return [_nested(chart, c, shape[1:], f"{where}[{i}]", source) for i, c in enumerate(comps)]


def _parse_candidate(chart, raw: Dict[str, Any], index: int, source: str) -> Candidate:
    where = f"candidates[{index}]"
    _expect(isinstance(raw, dict), "候选对象必须是 JSON 对象", where, source)
    kind = raw.get("kind")
    _expect(kind in CANDIDATE_KINDS, f"未知种类 {kind!r}，可用: {', '.join(CANDIDATE_KINDS)}", where, source)
    name = str(raw.get("name", f"{kind}-{index}"))
    comps = raw.get("components")
    n = chart.n
    try:
        if kind == MTILDE_SCALE:
            return Candidate(name, kind, _parse_text(chart, comps, f"{where}.components", source))
        if kind == MTILDE_VECTOR:
            values = _nested(chart, comps, [2 * n], f"{where}.components", source)
            return Candidate(name, kind, TensorField.from_function(chart, (up_t(n),), lambda mu: values[mu]))
        shape = {
            SolutionKind.RICCIFLAT.value: [],
            SolutionKind.BIVECTOR.value: [n, n],
        }.get(kind, [n])
        values = _nested(chart, comps, shape, f"{where}.components", source)
        return Candidate(name, kind, make_solution(chart, kind, values))
    except ScenarioError:
        raise
    except PWLabError as e:
        raise ScenarioError(str(e), path=f"{source}:{where}") from e


def scenario_from_dict(data: Dict[str, Any], source: str = "<scenario>") -> Scenario:
    """校验并构造场景；检查名统一为点分形式"""
    from .checks import resolve_check_name

    _expect(isinstance(data, dict), "场景必须是 JSON 对象", "", source)
    n = data.get("n")
    _expect(isinstance(n, int) and not isinstance(n, bool) and n >= 2, f"n 必须是 ≥ 2 的整数，得到 {n!r}", "n", source)
    chart = get_chart(n)

    coords = data.get("coordinates")
    if coords is not None:
        expected = [chart.names[i] for i in range(n)]
        _expect(list(coords) == expected,
                f"坐标维数或名称不符: 需要 {expected}，得到 {coords}", "coordinates", source)

    conn = data.get("connection", {}) or {}
    _expect(isinstance(conn, dict), "connection 必须是 JSON 对象", "connection", source)
    gamma = _parse_gamma(chart, conn.get("gamma", {}) or {}, source)
    volume = conn.get("volume")
    vol = None if volume is None else _parse_text(chart, volume, "connection.volume", source)
    try:
        connection = AffineConnection.from_entries(n, gamma, volume=vol, symmetrize=False)
    except PWLabError as e:
        raise ScenarioError(str(e), path=f"{source}:connection") from e

    candidates = [_parse_candidate(chart, raw, i, source) for i, raw in enumerate(data.get("candidates", []) or [])]

    checks = []
    for i, name in enumerate(data.get("checks", []) or []):
        try:
            checks.append(resolve_check_name(str(name)))
        except KeyError as e:
            raise ScenarioError(e.args[0], path=f"{source}:checks[{i}]") from e

    opts = data.get("options", {}) or {}
    scales = [str(s) for s in opts.get("scales", []) or []]
    for i, s in enumerate(scales):
        _parse_text(chart, s, f"options.scales[{i}]", source)
    options = ScenarioOptions(
        degree_bound=opts.get("degreeBound"),
        jobs=opts.get("jobs"),
        scales=scales,
    )

    return Scenario(
        name=str(data.get("name") or Path(source).stem),
        n=n,
        connection=connection,
        candidates=candidates,
        checks=checks,
        options=options,
        path=source,
    )


def parse_scenario(path: Union[str, Path]) -> Scenario:
    path = Path(path)
    if not path.exists():
        raise ScenarioError("场景文件不存在", path=str(path))
    text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError(f"JSON 格式错误: {e.msg}", path=str(path), line=e.lineno, column=e.colno) from e
    return scenario_from_dict(data, source=str(path))
