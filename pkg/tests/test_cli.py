"""CLI subcommands: reports, traces, fuzzing, exit codes."""

import json

import pytest
import yaml
from click.testing import CliRunner

from phishgame.cli import main
from phishgame.fuzz import fuzz_capability_soundness


@pytest.fixture
def runner():
    return CliRunner()


def _write_config(path, **overrides):
    config = {"version": 1, "profile": "chrome", "universe_size": 128, "seed": 5, "n": 20}
    config.update(overrides)
    path.write_text(yaml.safe_dump(config))
    return path


def test_episode_trace_byte_identical(runner, tmp_path):
    config = _write_config(tmp_path / "s.yaml")
    for name in ("a.txt", "b.txt"):
        result = runner.invoke(
            main, ["episode", "--config", str(config), "--trace", "--out", str(tmp_path / name)]
        )
        assert result.exit_code == 0, result.output
    assert (tmp_path / "a.txt").read_bytes() == (tmp_path / "b.txt").read_bytes()


def test_episode_json_output(runner, tmp_path):
    config = _write_config(tmp_path / "s.yaml")
    result = runner.invoke(main, ["episode", "--config", str(config), "--seed", "99"])
    assert result.exit_code == 0
    transcript = json.loads(result.output)
    assert transcript["seed"] == 99


def test_matrix_default_config_shape(runner, tmp_path, monkeypatch):
    monkeypatch.setenv("PHISHGAME_OUT", str(tmp_path))
    config = _write_config(tmp_path / "s.yaml", n=10)
    result = runner.invoke(main, ["matrix", "--config", str(config)])
    assert result.exit_code == 0, result.output
    report = json.loads((tmp_path / "matrix.json").read_text())
    assert len(report["cells"]) == 35
    assert len(report["baselines"]) == 5
    assert report["base_seed"] == 5
    assert len(report["config_hash"]) == 64
    csv_lines = (tmp_path / "matrix.csv").read_text().strip().splitlines()
    assert len(csv_lines) == 1 + 35 + 5


def test_matrix_deterministic(runner, tmp_path):
    config = _write_config(tmp_path / "s.yaml", n=10)
    outputs = []
    for sub in ("one", "two"):
        out = tmp_path / sub
        result = runner.invoke(main, ["matrix", "--config", str(config), "--out", str(out)])
        assert result.exit_code == 0, result.output
        outputs.append((out / "matrix.json").read_bytes())
    assert outputs[0] == outputs[1]


def test_schema_violation_exit_2(runner, tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text(yaml.safe_dump({"version": 1, "profile": "lynx", "universe_size": 1}))
    result = runner.invoke(main, ["matrix", "--config", str(bad)])
    assert result.exit_code == 2
    assert "profile" in result.output or "profile" in (result.stderr or "")


def test_fuzz_clean_exit(runner):
    result = runner.invoke(main, ["fuzz", "--actions", "1500", "--seed", "4"])
    assert result.exit_code == 0
    assert "0 violations" in result.output


def test_fuzz_reports_violation_exit_3(runner, monkeypatch):
    from phishgame import cli as climod
    from phishgame.fuzz import FuzzReport

    monkeypatch.setattr(
        climod,
        "fuzz_capability_soundness",
        lambda *a, **k: FuzzReport(1, 1, ((1, "synthetic violation"),)),
    )
    result = runner.invoke(main, ["fuzz", "--actions", "1"])
    assert result.exit_code == 3


def test_fuzz_library_soundness():
    report = fuzz_capability_soundness(3000, seed=11, universe_size=64)
    assert report.ok
    assert report.sequences_run > 100
