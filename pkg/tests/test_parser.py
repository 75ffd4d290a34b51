import json

import pytest

from src.cli import DEFAULT_CHECKS, parse_scenario, scenario_from_dict
from src.errors import ScenarioError
from src.projective import SolutionKind, curvature, is_special


def _base(**extra):
    data = {"name": "t", "n": 2, "coordinates": ["x1", "x2"], "connection": {"gamma": {"1,2,1": "x2"}}}
    data.update(extra)
    return data


def test_flat_n2_uses_default_checks(gallery):
    s = parse_scenario(gallery / "flat_n2.json")
    assert s.n == 2
    assert s.connection.gamma.is_zero()
    assert s.checks == []
    assert len(DEFAULT_CHECKS) == 12
    assert {c.kind for c in s.candidates} == {k.value for k in SolutionKind}


def test_e3_gallery_scenario(gallery, chart3):
    s = parse_scenario(gallery / "E3_ricciflat.json")
    assert s.n == 3
    assert s.connection.G(0, 1, 0) == chart3.x(2)
    assert "pw.schouten_zero" in s.checks


def test_gamma_mirror_is_filled(chart2):
    s = scenario_from_dict(_base(connection={"gamma": {"1,2,2": "x1"}}))
    D = s.connection
    assert D.G(0, 1, 1) == chart2.x(0)
    assert D.G(1, 1, 0) == chart2.x(0)


def test_non_symmetric_gamma_is_rejected():
    with pytest.raises(ScenarioError, match="不对称"):
        scenario_from_dict(_base(connection={"gamma": {"1,1,2": "x1", "2,1,1": "x2"}}))


def test_gamma_may_not_depend_on_p():
    with pytest.raises(ScenarioError):
        scenario_from_dict(_base(connection={"gamma": {"1,1,2": "p1"}}))


def test_coordinate_mismatch():
    with pytest.raises(ScenarioError, match="坐标"):
        scenario_from_dict(_base(coordinates=["x1", "x2", "x3"]))


def test_malformed_polynomial_points_at_token():
    with pytest.raises(ScenarioError) as err:
        scenario_from_dict(_base(connection={"gamma": {"1,1,2": "x1^"}}))
    assert err.value.column == 3
    assert "gamma" in err.value.path


def test_unknown_check_lists_valid_names():
    with pytest.raises(ScenarioError) as err:
        scenario_from_dict(_base(checks=["pw.no_such_check"]))
    assert "pw.curvature_dictionary" in str(err.value)


def test_underscore_alias_is_normalized():
    s = scenario_from_dict(_base(checks=["base_ricci_flat", "sym_decompose_roundtrip"]))
    assert s.checks == ["base.ricci_flat", "sym.decompose.roundtrip"]


def test_candidate_shape_is_validated():
    with pytest.raises(ScenarioError):
        scenario_from_dict(_base(candidates=[{"kind": "euler", "components": ["1"]}]))
    with pytest.raises(ScenarioError):
        scenario_from_dict(_base(candidates=[{"kind": "spinor", "components": ["1"]}]))


def test_mtilde_candidates(chart2):
    s = scenario_from_dict(_base(candidates=[
        {"name": "k", "kind": "mtilde-vector", "components": ["0", "0", "2*p1", "2*p2"]},
        {"name": "s", "kind": "mtilde-scale", "components": "x2*p2"},
    ]))
    k, sigma = s.candidates
    assert not k.is_base and not sigma.is_base
    assert k.value[2] == 2 * chart2.p(0)
    assert sigma.value == chart2.x(1) * chart2.p(1)


def test_json_error_has_line_and_column(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "n": 2,\n  "connection": \n}', encoding="utf-8")
    with pytest.raises(ScenarioError) as err:
        parse_scenario(path)
    assert err.value.line == 4


def test_missing_file(tmp_path):
    with pytest.raises(ScenarioError):
        parse_scenario(tmp_path / "nope.json")


def test_options_are_read(tmp_path):
    path = tmp_path / "opts.json"
    path.write_text(json.dumps(_base(options={"degreeBound": 1, "jobs": 2, "scales": ["1 + x1"]})), encoding="utf-8")
    s = parse_scenario(path)
    assert (s.options.degree_bound, s.options.jobs, s.options.scales) == (1, 2, ["1 + x1"])


@pytest.mark.parametrize("name, value", [("E2", "x2"), ("cotton_n2", "x2^2")])
def test_n2_gallery_connections_are_special(gallery, chart2, name, value):
    D = parse_scenario(gallery / f"{name}.json").connection
    assert D.G(0, 1, 0) == chart2.parse(value)
    assert D.trace().is_zero()
    assert is_special(D)


def test_e3_gallery_connection_is_ricci_flat(gallery):
    assert curvature(parse_scenario(gallery / "E3_ricciflat.json").connection).ricci.is_zero()
