import json
import shutil
import threading
from concurrent.futures import ThreadPoolExecutor

import pytest

import pwlab
from src.cli import CATALOG, CheckContext, CheckReport, GalleryScanner, emit_report, manifest, parse_scenario, run_checks
from src.config import ConfigManager

OPERATIONS = {
    "symmetrize", "grade_in_p", "curvature", "projective_weyl_cotton", "projective_change", "special_part",
    "thomas_parameters", "solution_residual", "prolong", "dualize_lowdim", "build", "frame_christoffels",
    "curvature_dictionary", "k_properties", "conformal_covariance_check", "recover_connection", "thomas_pw",
    "make_chi_etacheck", "twistor_residual", "lie_derivative_spinor", "eta_spinor", "aes_residual",
    "lift_minus", "lift_plus", "decompose_scale", "ck_residual", "killing_residual", "lift_conformal",
    "lift_affine", "decompose", "lightlike_geodetic", "lift_invariance_check",
}


def test_every_operation_has_a_check():
    covered = {op for _, _, ops in manifest() for op in ops}
    assert OPERATIONS <= covered
    names = [name for name, _, _ in manifest()]
    assert names == sorted(names) == sorted(CATALOG)


def test_ricci_flat_check_fails_on_e2(gallery):
    report = run_checks(parse_scenario(gallery / "E2.json"), ConfigManager.defaults(), only=["base.ricci_flat"])
    entry = report.entry("E2", "base.ricci_flat")
    assert entry.status == "fail"
    assert entry.residual == "Ric: [0,0]: 1"
    assert not report.all_passed


def test_spin_check_on_non_trace_free_connection_is_an_error(gallery):
    scenario = parse_scenario(gallery / "nonspecial_n2.json")
    report = run_checks(scenario, ConfigManager.defaults(), only=["spin.projectors"])
    entry = report.entry("nonspecial_n2", "spin.projectors")
    assert entry.status == "error"
    assert entry.detail.startswith("PreconditionError")
    assert report.counts == {"pass": 0, "fail": 0, "error": 1}


def test_nonspecial_scenario_passes(gallery):
    report = run_checks(parse_scenario(gallery / "nonspecial_n2.json"), ConfigManager.defaults())
    assert report.all_passed
    assert [e.name for e in report.entries] == sorted(e.name for e in report.entries)


def test_json_report_is_canonical(gallery):
    scenario = parse_scenario(gallery / "nonspecial_n2.json")
    first = emit_report(run_checks(scenario, ConfigManager.defaults()), "json")
    second = emit_report(run_checks(scenario, ConfigManager.defaults()), "json")
    assert first == second
    assert first.endswith(b"\n")
    payload = json.loads(first)
    assert payload["tool"] == "pwlab"
    assert "elapsed_ms" not in payload["checks"][0]


def test_empty_report():
    text = emit_report(CheckReport(), "text").decode("utf-8")
    assert len(text.splitlines()) == 1
    assert "检查报告" in text
    with pytest.raises(ValueError):
        emit_report(CheckReport(), "xml")


def test_gallery_scanner_skips_hidden_and_broken(gallery, tmp_path):
    shutil.copy(gallery / "E2.json", tmp_path / "E2.json")
    hidden = tmp_path / ".cache"
    hidden.mkdir()
    shutil.copy(gallery / "flat_n2.json", hidden / "flat_n2.json")
    (tmp_path / "broken.json").write_text("{", encoding="utf-8")
    found = GalleryScanner([str(tmp_path), str(tmp_path / "missing")]).scan_all()
    assert list(found) == ["E2"]


def test_main_list(capsys):
    assert pwlab.main(["list"]) == 0
    assert "pw.normal_form" in capsys.readouterr().out


def test_main_check_exit_codes(gallery, tmp_path, capsys):
    config = str(tmp_path / "none.yaml")
    assert pwlab.main(["check", "--config", config]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 1}', encoding="utf-8")
    assert pwlab.main(["check", str(bad), "--config", config]) == 2
    capsys.readouterr()
    code = pwlab.main(["check", str(gallery / "nonspecial_n2.json"), "-f", "json", "-j", "2", "--config", config])
    assert code == 0
    out = capsys.readouterr().out
    assert json.loads(out)["checks"][0]["scenario"] == "nonspecial_n2"


def test_main_gallery_runs_every_scenario(gallery, tmp_path, capsys):
    scenarios = tmp_path / "scenarios"
    scenarios.mkdir()
    shutil.copy(gallery / "nonspecial_n2.json", scenarios / "nonspecial_n2.json")
    config = tmp_path / "config.yaml"
    config.write_text(f"gallery:\n  directories:\n    - '{scenarios.as_posix()}'\n", encoding="utf-8")
    code = pwlab.main(["check", "--gallery", "-f", "json", "--config", str(config)])
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["checks"]) == 4
    assert {entry["scenario"] for entry in payload["checks"]} == {"nonspecial_n2"}
    assert code == 0


def test_e2_gallery_connection_is_special(gallery):
    report = run_checks(
        parse_scenario(gallery / "E2.json"), ConfigManager.defaults(),
        only=["base.special", "pw.k_properties", "pw.normal_form"],
    )
    assert report.all_passed, [(e.name, e.residual, e.detail) for e in report.entries]


def test_context_cache_computes_keys_independently(gallery):
    ctx = CheckContext(parse_scenario(gallery / "flat_n2.json"))
    started, release = threading.Event(), threading.Event()
    calls = []

    def slow():
        started.set()
        assert release.wait(5)
        calls.append("slow")
        return "slow"

    def fast():
        release.set()
        calls.append("fast")
        return "fast"

    with ThreadPoolExecutor(max_workers=3) as pool:
        first = pool.submit(ctx._cached, "slow", slow)
        assert started.wait(5)
        assert pool.submit(ctx._cached, "fast", fast).result(timeout=5) == "fast"
        again = pool.submit(ctx._cached, "slow", slow)
        assert first.result(timeout=5) == again.result(timeout=5) == "slow"
    assert sorted(calls) == ["fast", "slow"]
