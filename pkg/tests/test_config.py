from src.config import ConfigManager


def test_defaults_without_file():
    config = ConfigManager.defaults()
    assert config.solver.degree_bound == 3
    assert (config.runner.jobs, config.runner.format) == (4, "text")
    assert config.gallery.directories == ["./gallery"]


def test_missing_file_falls_back(tmp_path):
    config = ConfigManager(str(tmp_path / "absent.yaml"))
    assert config.as_dict() == ConfigManager.defaults().as_dict()


def test_load_yaml(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text(
        "solver:\n  degreeBound: 2\nrunner:\n  jobs: 8\n  format: json\n  checkTimeout: 5\n"
        "logging:\n  level: debug\n",
        encoding="utf-8",
    )
    config = ConfigManager(str(path))
    assert config.solver.degree_bound == 2
    assert (config.runner.jobs, config.runner.format, config.runner.check_timeout) == (8, "json", 5.0)
    assert config.logging.level == "DEBUG"


def test_invalid_format_uses_defaults(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("runner:\n  format: xml\n", encoding="utf-8")
    config = ConfigManager(str(path))
    assert config.runner.format == "text"


def test_overrides():
    config = ConfigManager.defaults()
    config.apply_overrides(jobs=0, fmt="json", degree_bound=1)
    assert config.runner.jobs == 1
    assert config.as_dict()["runner"]["format"] == "json"
    assert config.as_dict()["solver"]["degreeBound"] == 1
    config.apply_overrides()
    assert config.runner.format == "json"
