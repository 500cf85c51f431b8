"""End-to-end tests for the command line and the verification suite."""
import json
from pathlib import Path

import pytest

from entbuffer.core.protocols.bounds import clifford_bounds
from entbuffer.main import EXIT_CONFIG, EXIT_DEGENERATE, EXIT_OK, main
from entbuffer.services.verification_service import VerificationService

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
REFERENCE = {
    "system": {"lambda": 1.0, "mu": 0.1, "gamma": 0.025, "q": 1.0, "p": 0.75},
    "protocol": {"f_new": 0.8, "jump": {"a": 1 / 3, "b": 0.6}},
}


def write_config(tmp_path, data, name="run.json") -> str:
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def test_analyze_reference_system(tmp_path, capsys):
    assert main(["analyze", write_config(tmp_path, REFERENCE)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "availability = 0.740740741" in out
    assert "avg_consumed_fidelity = 0.841428571" in out
    assert "verdict = " in out


def test_analyze_shipped_configs(capsys):
    assert main(["analyze", str(CONFIGS / "reference.json")]) == EXIT_OK
    assert main(["analyze", str(CONFIGS / "clifford_band.json")]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Bilocal Clifford bounds" in out
    assert "not available in closed form" in out


def test_analyze_reports_availability_from_substitute_success(capsys):
    assert main(["analyze", str(CONFIGS / "clifford_band.json")]) == EXIT_OK
    out = capsys.readouterr().out
    assert "availability = " in out
    assert "success probability at F_new" in out

    assert main(["analyze", str(CONFIGS / "reference.json")]) == EXIT_OK
    assert "success probability at F_new" not in capsys.readouterr().out


def test_missing_field_is_reported_by_path(tmp_path, capsys):
    data = {"system": {"lambda": 1.0, "gamma": 0.025, "q": 1.0, "p": 0.75}, "protocol": REFERENCE["protocol"]}
    assert main(["analyze", write_config(tmp_path, data)]) == EXIT_CONFIG
    assert "system.mu" in capsys.readouterr().err


def test_malformed_json_and_missing_file(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text('{"system": {', encoding="utf-8")
    assert main(["analyze", str(broken)]) == EXIT_CONFIG
    assert main(["analyze", str(tmp_path / "absent.json")]) == EXIT_CONFIG
    err = capsys.readouterr().err
    assert "Malformed JSON" in err
    assert "absent.json" in err


def test_lambda_zero_outside_simulation(tmp_path):
    data = {**REFERENCE, "system": {**REFERENCE["system"], "lambda": 0.0}}
    assert main(["analyze", write_config(tmp_path, data)]) == EXIT_CONFIG


def test_sweep_csv(tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(["sweep", write_config(tmp_path, REFERENCE), "--out", str(out)]) == EXIT_OK
    raw = out.read_bytes()
    assert b"\r\n" not in raw
    lines = raw.decode("utf-8").splitlines()
    assert lines[0] == "param_value,availability,avg_fidelity"
    assert len(lines) == 102
    availabilities = [float(line.split(",")[1]) for line in lines[1:]]
    assert all(x > y for x, y in zip(availabilities, availabilities[1:]))
    assert lines[-1].split(",")[1] == "0.740740741"


def test_sweep_other_parameter(tmp_path, capsys):
    config = write_config(tmp_path, REFERENCE)
    assert main(["sweep", config, "--param", "gamma", "--from", "0", "--to", "0.1", "--steps", "5"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 6
    fidelities = [float(line.split(",")[2]) for line in lines[1:]]
    assert all(x > y for x, y in zip(fidelities, fidelities[1:]))


@pytest.mark.parametrize("extra", [["--from", "1", "--to", "0"], ["--steps", "1"]])
def test_sweep_rejects_bad_range(tmp_path, extra):
    assert main(["sweep", write_config(tmp_path, REFERENCE), *extra]) == EXIT_CONFIG


def test_regimes_csv(capsys):
    assert main(["regimes", str(CONFIGS / "clifford_band.json")]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "q,avail_lower_p,f_lower,avail_upper_p,f_upper"
    first = lines[1].split(",")
    assert first[0] == "0"
    assert first[2] == first[4]
    assert lines[-2] == "# universal_cap,0.95"
    assert lines[-1].startswith("# replacement_point,")


def test_regimes_needs_fresh_state(tmp_path):
    assert main(["regimes", write_config(tmp_path, REFERENCE)]) == EXIT_CONFIG


def test_simulate_is_reproducible(tmp_path):
    config = write_config(tmp_path, REFERENCE)
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["--samples", "300", "--t-sim", "10", "--seed", "5", "--threads", "1"]
    assert main(["simulate", config, *args, "--out", str(first)]) == EXIT_OK
    assert main(["simulate", config, *args, "--out", str(second)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    rows = dict(line.split(",") for line in first.read_text(encoding="utf-8").splitlines()[1:])
    assert rows["n_samples"] == "300"
    assert rows["clamp_events"] == "0"


@pytest.mark.slow
def test_simulate_output_does_not_depend_on_threads(tmp_path):
    config = str(CONFIGS / "clifford_band.json")
    single, many = tmp_path / "single.csv", tmp_path / "many.csv"
    args = ["--samples", "2000", "--seed", "4", "--mode", "linear"]
    assert main(["simulate", config, *args, "--threads", "1", "--out", str(single)]) == EXIT_OK
    assert main(["simulate", config, *args, "--threads", "8", "--out", str(many)]) == EXIT_OK
    assert single.read_bytes() == many.read_bytes()


def test_simulate_with_diagnostics(tmp_path, capsys):
    config = write_config(tmp_path, REFERENCE)
    assert main(["simulate", config, "--samples", "500", "--t-sim", "20", "--threads", "1", "--diagnostics"]) == 0
    keys = [line.split(",")[0] for line in capsys.readouterr().out.splitlines()]
    assert "level_tv_distance" in keys
    assert "level_empty" in keys
    assert "lifetime_ks_critical_1pct" in keys
    assert "convergence_fidelity_z" in keys
    assert "convergence_availability_z" in keys


def test_simulate_without_source(tmp_path, capsys):
    data = {**REFERENCE, "system": {**REFERENCE["system"], "lambda": 0.0}}
    code = main(["simulate", write_config(tmp_path, data), "--samples", "20", "--threads", "1"])
    assert code == EXIT_DEGENERATE
    rows = dict(line.split(",") for line in capsys.readouterr().out.splitlines()[1:])
    assert rows["availability"] == "0"
    assert rows["n_nonempty"] == "0"


def test_verify_without_simulation(capsys):
    assert main(["verify", "--no-simulation"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "bound-sandwich" in out
    assert "simulation-closed-form" not in out


def _results(report):
    return {check.name: check.passed for check in report.checks}


def test_verification_passes():
    results = _results(VerificationService().run(include_simulation=False))
    assert all(results.values()), results
    assert "catalogue-printed-form" in results


def test_verification_catches_loose_lower_bound():
    def loose_bounds(rho):
        bounds = clifford_bounds(rho)
        return bounds.model_copy(update={"a_l": bounds.a_l + 1e-3})

    results = _results(VerificationService(bounds_fn=loose_bounds).run(include_simulation=False))
    assert results["bound-sandwich"] is False


def test_verification_catches_wrong_bell_order(monkeypatch):
    import entbuffer.core.states as states

    monkeypatch.setattr(states, "BELL_VECTORS", states.BELL_VECTORS[[1, 0, 2, 3]].copy())
    results = _results(VerificationService().run(include_simulation=False))
    assert results["oracle-empty-circuit"] is False


@pytest.mark.slow
def test_verification_with_simulation():
    report = VerificationService(n_samples=10000).run()
    assert report.passed, [(c.name, c.detail) for c in report.failures]
    assert len(report.checks) == 12
