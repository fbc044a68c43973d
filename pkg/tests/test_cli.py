"""
명령행 인터페이스 테스트
"""

import json

import pandas as pd
import pytest

from config.settings import settings
from src.cli import main
from src.core.serialization import load_log, load_scenario, save_scenario, scenario_to_document
from src.harness.experiments import RESULT_COLUMNS


@pytest.fixture
def scenario_file(tmp_path, two_rate):
    path = tmp_path / "scenario.json"
    save_scenario(two_rate, path)
    return path


def test_gen_writes_valid_scenario(tmp_path, capsys):
    config = tmp_path / "gen.json"
    config.write_text(json.dumps({"n": 5, "m": 4, "rmin": 10, "rmax": 100, "tmin": 10, "tmax": 50}),
                      encoding="utf-8")
    first, second = tmp_path / "a.json", tmp_path / "b.json"

    assert main(["gen", "--config", str(config), "--seed", "7", "-o", str(first)]) == 0
    assert main(["gen", "--config", str(config), "--seed", "7", "-o", str(second)]) == 0

    assert first.read_bytes() == second.read_bytes()
    assert load_scenario(first).n_destinations == 4
    assert "wrote scenario with 4 destinations" in capsys.readouterr().out


@pytest.mark.parametrize("document", [
    {"n": "5", "m": 4, "rmin": 10, "rmax": 100, "tmin": 10, "tmax": 50},
    [{"n": 5}],
])
def test_gen_mistyped_config_exit_code(tmp_path, capsys, document):
    config = tmp_path / "gen.json"
    config.write_text(json.dumps(document), encoding="utf-8")
    output = tmp_path / "scenario.json"

    assert main(["gen", "--config", str(config), "-o", str(output)]) == 2
    assert "error:" in capsys.readouterr().err
    assert not output.exists()


def test_run_rsnc_prints_schedule(tmp_path, scenario_file, two_rate, capsys):
    log_path = tmp_path / "log.json"
    assert main(["run", "--algo", "rsnc", "--scenario", str(scenario_file), "-o", str(log_path)]) == 0

    lines = capsys.readouterr().out.splitlines()
    assert lines[:2] == ["p0 @ 5000", "p1⊕p2 @ 2000"]
    assert lines[-1] == "rsnc: 2 transmissions, 0/3 missed (miss ratio 0.0000)"
    assert load_log(log_path, two_rate).misses == 0


@pytest.mark.parametrize("algo,summary", [
    ("dsf", "dsf: 1 transmissions, 1/3 missed (miss ratio 0.3333)"),
    ("sin1", "sin1: 2 transmissions, 1/3 missed (miss ratio 0.3333)"),
    ("oracle", "oracle: 2 transmissions, 0/3 missed (miss ratio 0.0000)"),
])
def test_run_other_algorithms(scenario_file, capsys, algo, summary):
    assert main(["run", "--algo", algo, "--scenario", str(scenario_file)]) == 0
    assert capsys.readouterr().out.splitlines()[-1] == summary


def test_trace_shows_every_threshold(scenario_file, capsys):
    assert main(["trace", "--scenario", str(scenario_file)]) == 0
    out = capsys.readouterr().out

    assert out.startswith("coding graph: 3 vertices, 3 requests")
    assert "  k=1 Tr=2000 clique={1:1,2:2} rate=2000 U=1 loss=1" in out
    assert "  k=2 Tr=5000 clique={0:0} rate=5000 U=1 loss=0" in out
    assert "(empty)" in out
    assert out.rstrip().endswith("total: 2 transmissions, 0/3 missed")


def test_sweep_writes_csv(tmp_path, capsys):
    experiment = tmp_path / "experiment.json"
    experiment.write_text(json.dumps({
        "name": "cli-small",
        "base": {"n": 4, "m": 3, "rmin": 10, "rmax": 100, "tmin": 2, "tmax": 12, "packet_size": 20.0},
        "grid": [{"label": "base"}, {"label": "tmax=30", "overrides": {"tmax": 30}}],
        "algorithms": ["rsnc", "dsf"]
    }), encoding="utf-8")
    output = tmp_path / "out" / "results.csv"

    assert main(["sweep", "--experiment", str(experiment), "--samples", "3", "--seed", "1",
                 "-o", str(output)]) == 0

    frame = pd.read_csv(output)
    assert list(frame.columns) == RESULT_COLUMNS
    assert len(frame) == 4
    captured = capsys.readouterr()
    assert "cli-small: 4 rows, 12 runs, 0 skipped" in captured.out
    assert "[1/12] base rsnc sample 0 completed" in captured.err
    assert "[12/12] tmax=30 dsf sample 2 completed" in captured.err


def test_invalid_scenario_exit_code(tmp_path, two_rate, capsys):
    document = scenario_to_document(two_rate)
    document["destinations"][0]["has"] = [0, 1, 2]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(document), encoding="utf-8")

    assert main(["run", "--scenario", str(path)]) == 2
    assert "has∩wants nonempty" in capsys.readouterr().err


def test_malformed_json_exit_code(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{", encoding="utf-8")
    assert main(["trace", "--scenario", str(path)]) == 2
    assert "error:" in capsys.readouterr().err


def test_missing_file_exit_code(tmp_path):
    assert main(["run", "--scenario", str(tmp_path / "nope.json")]) == 2


def test_unknown_preset_exit_code(tmp_path):
    assert main(["sweep", "--experiment", "no-such-preset", "-o", str(tmp_path / "r.csv")]) == 2


def test_oracle_limit_exit_code(scenario_file, monkeypatch, capsys):
    monkeypatch.setattr(settings.oracle, "max_vertices", 2)
    assert main(["run", "--algo", "oracle", "--scenario", str(scenario_file)]) == 3
    assert "error:" in capsys.readouterr().err


def test_unknown_algorithm_rejected_by_parser(scenario_file):
    with pytest.raises(SystemExit):
        main(["run", "--algo", "magic", "--scenario", str(scenario_file)])
