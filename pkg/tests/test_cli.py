# -*- coding: utf-8 -*-
import json

import pytest

from qutrit_transfer import cli
from qutrit_transfer.errors import InvariantViolation


def write_config(tmp_path, name, **fields):
    path = tmp_path / f"{name}.config.json"
    path.write_text(json.dumps(fields, indent=4), encoding="utf-8")
    return path


def run(path):
    return cli.main(["run", "--config", str(path)])


def test_validate_accepts_good_config(tmp_path, capsys):
    path = write_config(tmp_path, "ok", scenario="transfer")
    assert cli.main(["validate", "--config", str(path)]) == cli.EXIT_OK
    assert "✅" in capsys.readouterr().out


def test_validate_rejects_bad_config(tmp_path, capsys):
    path = write_config(tmp_path, "bad", scenario="transfer", dt=5.0)
    assert cli.main(["validate", "--config", str(path)]) == cli.EXIT_CONFIG
    assert "dt" in capsys.readouterr().out


def test_invariant_failure_exit_code(tmp_path, monkeypatch):
    def broken(config):
        raise InvariantViolation("дрейф нормы")

    monkeypatch.setattr(cli, "run_scenario", broken)
    path = write_config(tmp_path, "broken", scenario="symmetrize", output_path=str(tmp_path / "s.json"))
    assert run(path) == cli.EXIT_INVARIANT


@pytest.mark.parametrize("scenario", ["transfer", "pulses", "symmetrize", "antisymmetrize", "qss", "distribute"])
def test_runs_are_byte_identical(tmp_path, scenario):
    outputs = []
    for attempt in range(2):
        output = tmp_path / f"{scenario}-{attempt}.out"
        path = write_config(tmp_path, f"{scenario}-{attempt}", scenario=scenario, output_path=str(output))
        assert run(path) == cli.EXIT_OK
        outputs.append(output.read_bytes())
    assert outputs[0] == outputs[1]


def test_pulses_csv(tmp_path):
    output = tmp_path / "pulses.csv"
    assert run(write_config(tmp_path, "pulses", scenario="pulses", output_path=str(output))) == cli.EXIT_OK
    lines = output.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "t,lambda1,lambda2,alpha1,alpha2,d_a,norm_err"
    assert float(lines[-1].split(",")[4]) >= 0.999


def test_transfer_report_with_laser(tmp_path):
    output = tmp_path / "transfer.json"
    path = write_config(tmp_path, "transfer", scenario="transfer", g=1.0, delta=10.0, output_path=str(output))
    assert run(path) == cli.EXIT_OK
    report = json.loads(output.read_text(encoding="utf-8"))
    assert list(report)[:3] == ["alpha2_final_l", "alpha2_final_r", "qutrit_fidelity"]
    assert report["qutrit_fidelity"] >= 0.998
    assert report["laser"]["delta_shift"] == pytest.approx(0.1)


def test_symmetrize_report(tmp_path):
    output = tmp_path / "sym.json"
    assert run(write_config(tmp_path, "sym", scenario="symmetrize", output_path=str(output))) == cli.EXIT_OK
    report = json.loads(output.read_text(encoding="utf-8"))
    assert len(report["amplitudes"]) == 27
    assert len(report["overlaps"]) == 6
    for entry in report["overlaps"]:
        assert entry["overlap"][0] == pytest.approx(1.0, abs=1e-10)


def test_qss_report(tmp_path):
    output = tmp_path / "qss.json"
    assert run(write_config(tmp_path, "qss", scenario="qss", seed=5, output_path=str(output))) == cli.EXIT_OK
    report = json.loads(output.read_text(encoding="utf-8"))
    assert len(report["branches"]) == 27
    assert all(branch["fidelity"] == pytest.approx(1.0, abs=1e-10) for branch in report["branches"])
    assert report["paper_exponents_match"] is False
    assert report["sample_run"]["seed"] == 5


def test_distribute_report(tmp_path):
    output = tmp_path / "distribute.json"
    assert run(write_config(tmp_path, "distribute", scenario="distribute", output_path=str(output))) == cli.EXIT_OK
    report = json.loads(output.read_text(encoding="utf-8"))
    assert len(report["amplitudes"]) == 9
    assert report["fidelity"] >= 0.998
