import json

import pytest
import structlog
from typer.testing import CliRunner

from f2_subspaces.cli import EXIT_LIBRARY_ERROR, app
from f2_subspaces.errors import F2SubspacesError
from f2_subspaces.harness import experiment
from f2_subspaces.harness.instances import parse

runner = CliRunner()

SMALL_EXPERIMENT = """\
name: cli
trials: {trials}
instance:
  n: 5
  d0: 2
  d1: 2
  relation: identical
wmin: 0.3
delta: 0.1
"""


@pytest.fixture(autouse=True)
def reset_structlog():
    yield
    structlog.reset_defaults()


def invoke(*args):
    return runner.invoke(app, ["--log-level", "CRITICAL", *args])


def test_gen_prints_an_instance():
    result = invoke(
        "gen", "--n", "6", "--d0", "3", "--d1", "2", "--relation", "nested", "--seed", "3"
    )

    assert result.exit_code == 0, result.output
    doc = parse(result.stdout)
    a0, a1 = doc.subspaces()
    assert doc.n == 6 and doc.seed == 3
    assert a1.is_subset(a0)


def test_gen_is_deterministic():
    args = ("gen", "--n", "7", "--d0", "3", "--d1", "3", "--seed", "9")

    assert invoke(*args).stdout == invoke(*args).stdout


def test_gen_rejects_infeasible_shapes():
    result = invoke("gen", "--n", "4", "--d0", "4", "--d1", "2", "--relation", "incomparable")

    assert result.exit_code == EXIT_LIBRARY_ERROR


def test_recover_an_instance_file(tmp_path):
    path = tmp_path / "instance.json"
    generated = invoke(
        "gen", "--n", "6", "--d0", "3", "--d1", "3", "--relation", "identical",
        "--seed", "2", "--out", str(path),
    )
    assert generated.exit_code == 0, generated.output

    result = invoke("recover", str(path), "--wmin", "0.3")

    assert result.exit_code == 0, result.output
    payload = json.loads(result.stdout)
    assert payload["regime"] == "identical"
    assert payload["exact_match"] is True
    assert payload["n"] == 6


def test_recover_csv_output():
    result = invoke(
        "recover", "--n", "5", "--d0", "2", "--d1", "2", "--relation", "identical",
        "--wmin", "0.3", "--format", "csv",
    )

    assert result.exit_code == 0, result.output
    header, values = result.stdout.splitlines()
    assert header.split(",")[0] == "regime"
    assert header.split(",")[-1] == "exact_match"
    assert values.split(",")[-1] == "1"


def test_recover_needs_an_instance():
    result = invoke("recover", "--n", "5")

    assert result.exit_code != 0


def test_comparability_command():
    result = invoke(
        "test-comparability", "--n", "6", "--d0", "2", "--d1", "2", "--relation", "identical",
        "--seed", "4",
    )

    assert result.exit_code == 0, result.output
    payload = json.loads(result.stdout)
    assert payload["truth"] is True
    assert payload["comparable"] is True
    assert payload["samples"] > 0


def test_experiment_with_no_trials(tmp_path):
    config = tmp_path / "experiment.yaml"
    config.write_text(SMALL_EXPERIMENT.format(trials=0), encoding="utf-8")

    result = invoke("experiment", str(config))

    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["success_rate"] is None


def test_experiment_writes_reports(tmp_path):
    config = tmp_path / "experiment.yaml"
    config.write_text(SMALL_EXPERIMENT.format(trials=2), encoding="utf-8")
    out = tmp_path / "results"

    result = invoke("experiment", str(config), "--out", str(out), "--format", "csv")

    assert result.exit_code == 0, result.output
    assert (out / "report.csv").read_text(encoding="utf-8") == result.stdout
    assert json.loads((out / "report.json").read_text(encoding="utf-8"))["success_rate"] == 1.0


def test_experiment_with_a_bad_config(tmp_path):
    config = tmp_path / "experiment.yaml"
    config.write_text(SMALL_EXPERIMENT.format(trials=2).replace("delta: 0.1", "delta: 3"))

    result = invoke("experiment", str(config))

    assert result.exit_code == EXIT_LIBRARY_ERROR
    assert "experiment.yaml:9" in result.output


def test_experiment_below_threshold_exits_one(tmp_path, monkeypatch):
    def broken(*args, **kwargs):
        raise F2SubspacesError("no luck")

    monkeypatch.setattr(experiment, "recover_driver", broken)
    config = tmp_path / "experiment.yaml"
    config.write_text(SMALL_EXPERIMENT.format(trials=2), encoding="utf-8")

    result = invoke("experiment", str(config))

    assert result.exit_code == 1
    assert json.loads(result.stdout)["success_rate"] == 0.0


def test_lpn_demo():
    result = invoke(
        "lpn-demo", "--n", "4", "--trials", "2", "--eps", "0.05", "--label-samples", "2000",
        "--format", "csv",
    )

    assert result.exit_code == 0, result.output
    header, values = result.stdout.splitlines()
    assert header == "n,eps,trials,round_trip_ok,solved,solve_rate,label_agreement"
    fields = values.split(",")
    assert fields[:4] == ["4", "0.05", "2", "2"]
    assert float(fields[5]) == int(fields[4]) / 2
    assert abs(float(fields[6]) - 0.95) <= 0.02


def test_lpn_demo_label_agreement_tracks_the_noise_rate():
    result = invoke(
        "lpn-demo", "--n", "4", "--trials", "1", "--eps", "0.2", "--seed", "5",
        "--label-samples", "4000",
    )

    assert result.exit_code == 0, result.output
    payload = json.loads(result.stdout)
    assert abs(payload["label_agreement"] - 0.8) <= 0.03
    assert payload["solve_rate"] in (0.0, 1.0)
