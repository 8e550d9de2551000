import csv
import json
from fractions import Fraction

import pytest

from manager import ConfigError, build_config, run_from_cli
from manager.config import THREADS_ENV, parse_tolerances
from manager.core import EXIT_OPERATOR_CONTRACT, EXIT_PROPERTY_FAILURE, EXIT_SCHEMA, EXIT_WINDOW, exit_code_for
from jobs._files import format_json
from manager.history import RunHistory
from padic.lcf import PiecewiseConstant, omega
from wavelets.basis import mother_psi

OMEGA_2 = {"prime": 2, "pieces": [{"center": "0", "radius_exp": 0, "value": [1.0, 0.0]}]}
HAAR_STEP = {"K": 0, "M": 1, "values": [[1.0, 0.0], [-1.0, 0.0]]}


@pytest.fixture
def workspace(tmp_path):
    settings = tmp_path / "settings.json"
    settings.write_text(
        json.dumps({"window": [2, 0], "threads": 2, "verify": {"holder_pairs": 200, "ball_members": 50}}),
        encoding="utf-8",
    )
    out = tmp_path / "out"

    def cli(*args):
        return run_from_cli(["--config", str(settings), "--out", str(out), *args])

    return tmp_path, out, cli


def _write(path, payload):
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def _rows(path):
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


# ----------------------------------------------------------------- config
def test_config_priority(tmp_path, monkeypatch):
    settings = tmp_path / "settings.json"
    settings.write_text(json.dumps({"prime": 3, "alpha": 0.5, "tolerances": {"gram": 1e-8}}), encoding="utf-8")
    config = build_config(settings, prime=5, tolerances=["operator=1e-6"])
    assert config.prime == 5
    assert config.alpha == 0.5
    assert config.window == (2, 2)
    assert config.tolerance("gram") == 1e-8
    assert config.tolerance("operator") == 1e-6
    assert config.tolerance("value") == 1e-12

    monkeypatch.setenv(THREADS_ENV, "2")
    assert build_config(settings, threads=8).threads == 2


def test_missing_settings_file_uses_defaults(tmp_path):
    config = build_config(tmp_path / "absent.json")
    assert (config.prime, config.alpha, config.window, config.threads) == (2, 1.0, (2, 2), 4)


@pytest.mark.parametrize(
    "overrides",
    [
        {"prime": 4},
        {"alpha": 0.0},
        {"window": "1"},
        {"window": "-2,1"},
        {"tolerances": ["speed=1"]},
        {"tolerances": ["value=-1"]},
        {"threads": 0},
        {"log_level": "loud"},
    ],
)
def test_invalid_settings(tmp_path, overrides):
    with pytest.raises(ConfigError):
        build_config(tmp_path / "absent.json", **overrides)


def test_malformed_settings_file(tmp_path):
    settings = tmp_path / "settings.json"
    settings.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConfigError):
        build_config(settings)


def test_bare_tolerance_sets_value():
    assert parse_tolerances(["1e-9"]) == {"value": 1e-9}


def test_exit_codes_for_unexpected_errors():
    assert exit_code_for(RuntimeError("boom")) is None
    assert exit_code_for(ConfigError("bad")) == EXIT_SCHEMA


# ---------------------------------------------------------------- history
def test_run_history(tmp_path):
    history = RunHistory(tmp_path / "history.jsonl")
    assert history.fetch_history() == []
    first = history.log_history(job_name="analyze", event_type="job_start", status="started")
    second = history.log_history(job_name="analyze", event_type="job_end", status="success", row_count=3)
    assert (first, second) == (1, 2)
    rows = history.fetch_history()
    assert [row["event_type"] for row in rows] == ["job_end", "job_start"]
    assert rows[0]["row_count"] == 3
    assert len(history.fetch_history(limit=1)) == 1


# -------------------------------------------------------------------- cli
def test_analyze_and_synthesize(workspace):
    tmp_path, out, cli = workspace
    assert cli("analyze", _write(tmp_path / "omega.json", OMEGA_2)) == 0
    rows = _rows(out / "coefficients.csv")
    assert len(rows) == 3
    assert list(rows[0]) == ["gamma", "j", "n_num", "n_den_exp", "re", "im"]
    summary = json.loads((out / "summary.json").read_text(encoding="utf-8"))
    assert summary["nonzero_count"] == 2
    assert summary["scaling_coeff"][0] == pytest.approx(0.5)
    assert summary["parseval_defect"] < 1e-10

    assert cli("synthesize", str(out)) == 0
    rebuilt = PiecewiseConstant.from_json(json.loads((out / "function.json").read_text(encoding="utf-8")))
    assert rebuilt.max_abs_difference(omega(2)) < 1e-12

    events = [row["event_type"] for row in RunHistory(out / "run_history.jsonl").fetch_history()]
    assert events == ["job_end", "job_start", "job_end", "job_start"]


def test_analyze_error_exit_codes(workspace):
    tmp_path, out, cli = workspace
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    assert cli("analyze", str(bad)) == EXIT_SCHEMA
    assert cli("analyze", str(tmp_path / "missing.json")) == EXIT_SCHEMA
    overlapping = {
        "prime": 2,
        "pieces": [
            {"center": "0", "radius_exp": 0, "value": [1, 0]},
            {"center": "0", "radius_exp": 1, "value": [2, 0]},
        ],
    }
    assert cli("analyze", _write(tmp_path / "overlap.json", overlapping)) == EXIT_SCHEMA
    assert cli("--prime", "3", "analyze", _write(tmp_path / "omega.json", OMEGA_2)) == EXIT_SCHEMA
    assert cli("--window=-1,2", "analyze", str(tmp_path / "omega.json")) == EXIT_WINDOW
    assert run_from_cli(["--config", str(tmp_path / "absent.json"), "--prime", "6", "monna"]) == EXIT_SCHEMA


def test_dalpha_modes(workspace):
    tmp_path, out, cli = workspace
    psi = _write(tmp_path / "psi.json", mother_psi(2).to_json())
    assert cli("--window", "1,1", "dalpha", psi) == 0
    rows = _rows(out / "dalpha_coefficients.csv")
    values = {(int(r["gamma"]), int(r["n_num"])): complex(float(r["re"]), float(r["im"])) for r in rows}
    assert abs(values[(0, 0)] - 2) < 1e-12

    omega_path = _write(tmp_path / "omega.json", OMEGA_2)
    assert cli("dalpha", omega_path) == EXIT_OPERATOR_CONTRACT

    assert cli("dalpha", omega_path, "--mode", "direct", "--point", "0", "--point", "1/2^1") == 0
    rows = _rows(out / "dalpha_values.csv")
    assert [r["x"] for r in rows] == ["0", "1/2^1"]
    assert float(rows[0]["re"]) == pytest.approx(2 / 3)
    assert float(rows[1]["re"]) == pytest.approx(-1 / 3)

    step = _write(tmp_path / "haar.json", HAAR_STEP)
    assert cli("dalpha", step, "--mode", "real", "--point", "0", "--point", "3/2") == 0
    rows = _rows(out / "dalpha_values.csv")
    assert float(rows[0]["re"]) == pytest.approx(2)
    assert abs(float(rows[1]["re"])) < 1e-12
    assert cli("dalpha", step, "--mode", "real", "--point", "1/3", "--point", "7/3") == 0
    rows = _rows(out / "dalpha_values.csv")
    assert float(rows[0]["re"]) == pytest.approx(2)
    assert abs(float(rows[1]["re"])) < 1e-12
    assert cli("--prime", "3", "dalpha", step, "--mode", "real") == EXIT_SCHEMA


def test_monna(workspace):
    tmp_path, out, cli = workspace
    assert cli("monna", "1/2^1", "3/2^2", "-1", "--ball", "3/2^2:1") == 0
    rows = _rows(out / "monna_points.csv")
    assert [Fraction(r["rho"]) for r in rows] == [Fraction(1), Fraction(3), Fraction(1)]
    balls = _rows(out / "monna_balls.csv")
    assert len(balls) == 1
    assert Fraction(balls[0]["length"]) == Fraction(1, 2)

    assert cli("--window", "1,1", "monna") == 0
    assert len(_rows(out / "monna_balls.csv")) == 4
    assert cli("monna", "1/3^1") == EXIT_SCHEMA


def test_bridge(workspace):
    tmp_path, out, cli = workspace
    step = _write(tmp_path / "step.json", {"K": 1, "M": 1, "values": [[1, 0], [2, 1], [0, 0], [-3, 0]]})
    assert cli("bridge", step) == 0
    summary = json.loads((out / "bridge_summary.json").read_text(encoding="utf-8"))
    assert summary["commutation_residual"] < 1e-12
    assert summary["norm_squared_padic"] == pytest.approx(summary["norm_squared_real"])
    assert len(_rows(out / "haar_coefficients.csv")) == 3
    assert len(_rows(out / "padic_coefficients.csv")) == 3
    assert cli("--prime", "3", "bridge", step) == EXIT_SCHEMA


def test_verify(workspace):
    tmp_path, out, cli = workspace
    assert cli("verify", "--only", "omega_parseval", "--only", "monna_holder", "--only", "basis_eigenvalues") == 0
    report = json.loads((out / "verify_report.json").read_text(encoding="utf-8"))
    assert report["passed"]
    assert [p["name"] for p in report["properties"]] == ["omega_parseval", "monna_holder", "basis_eigenvalues"]

    assert cli("verify", "--only", "basis_eigenvalues", "--perturb-eigenvalue", "1e-3") == EXIT_PROPERTY_FAILURE
    report = json.loads((out / "verify_report.json").read_text(encoding="utf-8"))
    assert report["failed"] == ["basis_eigenvalues"]

    assert cli("verify", "--only", "no_such_property") == EXIT_SCHEMA


def test_verify_skips_haar_suites_for_odd_primes(workspace):
    tmp_path, out, cli = workspace
    assert cli("--prime", "3", "--threads", "1", "verify", "--only", "haar_correspondence") == 0
    report = json.loads((out / "verify_report.json").read_text(encoding="utf-8"))
    assert report["properties"][0]["skipped"]


def test_history_ids_continue_across_instances(tmp_path):
    path = tmp_path / "history.jsonl"
    first = RunHistory(path)
    first.log_history(job_name="monna", event_type="job_start", status="started")
    first.log_history(job_name="monna", event_type="job_end", status="success")
    second = RunHistory(path)
    assert second.log_history(job_name="verify", event_type="job_start", status="started") == 3
    assert first.log_history(job_name="monna", event_type="job_end", status="success") == 4
    assert [row["id"] for row in second.fetch_history()] == [4, 3, 2, 1]


def test_json_floats_use_seventeen_digits():
    text = format_json({"x": 0.1, "flags": [True, None], "n": 3, "empty": {}})
    assert '"x": 0.10000000000000001' in text
    assert json.loads(text) == {"x": 0.1, "flags": [True, None], "n": 3, "empty": {}}


def test_verify_report_is_reproducible(workspace):
    tmp_path, _, _ = workspace
    reports = []
    for run in ("first", "second"):
        out = tmp_path / run
        args = ["--config", str(tmp_path / "settings.json"), "--out", str(out), "verify"]
        args += ["--only", "orthonormality", "--only", "monna_holder", "--only", "tail_validation"]
        assert run_from_cli(args) == 0
        reports.append((out / "verify_report.json").read_bytes())
    assert reports[0] == reports[1]


def test_analyze_output_is_reproducible(workspace):
    tmp_path, _, _ = workspace
    source = _write(tmp_path / "psi.json", mother_psi(3).to_json())
    outputs = []
    for run in ("first", "second"):
        out = tmp_path / run
        args = ["--config", str(tmp_path / "settings.json"), "--out", str(out), "--prime", "3", "analyze", source]
        assert run_from_cli(args) == 0
        outputs.append([(out / name).read_bytes() for name in ("coefficients.csv", "summary.json")])
    assert outputs[0] == outputs[1]


@pytest.mark.parametrize("flags", [["--window", "2,2"], ["--prime", "5", "--alpha", "0.5"]])
def test_full_verify_passes(workspace, flags):
    _, out, cli = workspace
    assert cli(*flags, "verify") == 0
    report = json.loads((out / "verify_report.json").read_text(encoding="utf-8"))
    assert report["passed"]
    assert len(report["properties"]) == 13
