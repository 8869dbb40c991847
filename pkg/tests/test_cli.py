import json
import math
import subprocess
import sys

import numpy as np
import pytest

from inertonsim.cli import builtin_presets, main, merge_config, resolve_config
from inertonsim.constants import ELECTRON_MASS, LIGHT_SPEED, PLANCK


def run_cli(*args):
    return main(list(args))


def write_cfg(path, cfg):
    path.write_text(json.dumps(cfg))
    return str(path)


# ------------------------------------------------------------ configuration

def test_presets_resolve():
    for name, cfg in builtin_presets().items():
        params, kin, resolved = resolve_config(cfg)
        assert resolved["parameters"]["T"] == params.T, name


def test_both_T_and_h_rejected(tmp_path):
    cfg = write_cfg(tmp_path / "c.json", {"parameters": {"M0": 1, "v0": 1, "c": 10, "T": 1, "h": 2}})
    assert run_cli("simulate", "--config", cfg, "--out", str(tmp_path / "o")) == 1


def test_neither_T_nor_h_rejected(tmp_path):
    cfg = write_cfg(tmp_path / "c.json", {"parameters": {"M0": 1, "v0": 1, "c": 10}})
    assert run_cli("simulate", "--config", cfg, "--out", str(tmp_path / "o")) == 1


def test_superluminal_rejected(tmp_path):
    cfg = write_cfg(tmp_path / "c.json", {"parameters": {"M0": 1, "v0": 20, "c": 10, "T": 1}})
    assert run_cli("simulate", "--config", cfg, "--out", str(tmp_path / "o")) == 1


def test_unknown_parameter_key_rejected(tmp_path):
    cfg = write_cfg(
        tmp_path / "c.json", {"parameters": {"M0": 1, "v0": 1, "c": 10, "T": 1, "zz": 3}}
    )
    assert run_cli("simulate", "--config", cfg, "--out", str(tmp_path / "o")) == 1


def test_missing_config_file_is_io_error(tmp_path):
    assert run_cli("simulate", "--config", str(tmp_path / "nope.json")) == 3


def test_malformed_json_is_validation_error(tmp_path):
    p = tmp_path / "c.json"
    p.write_text("{not json")
    assert run_cli("simulate", "--config", str(p)) == 1


def test_unknown_preset(tmp_path):
    assert run_cli("simulate", "--preset", "warpdrive", "--out", str(tmp_path)) == 1


def test_config_overrides_preset():
    base = builtin_presets()["natural"]
    merged = merge_config(base, {"simulation": {"t_end": 4.0}})
    assert merged["simulation"]["t_end"] == 4.0
    assert merged["simulation"]["dt"] == base["simulation"]["dt"]
    assert merged["parameters"] == base["parameters"]


def test_h_resolves_period():
    cfg = {"parameters": {"M0": 1.0, "v0": 1.0, "c": 10.0, "h": 2.0}}
    params, _, resolved = resolve_config(cfg)
    M = 1.0 / math.sqrt(1.0 - 0.01)
    assert params.T == pytest.approx(2.0 / M, rel=1e-14)
    assert resolved["input_h"] == 2.0
    assert "h" not in resolved["parameters"]


# ----------------------------------------------------------------- simulate

def test_simulate_natural(tmp_path, capsys):
    out = tmp_path / "run"
    assert run_cli("simulate", "--preset", "natural", "--out", str(out)) == 0
    rows = (out / "trajectory.csv").read_text().strip().splitlines()
    assert rows[0] == "t,X,dXdt,x,dxdt,invariant_residual,event_flag"
    assert len(rows) == 1 + 10001  # header + 10 (T/dt) + 1 samples
    events = json.loads((out / "events.json").read_text())["events"]
    assert len(events) == 10
    meta = json.loads((out / "metadata.json").read_text())
    assert meta["command"] == "simulate"
    assert meta["version"]
    assert meta["parameters"]["T"] == 1.0
    assert meta["derived"]["n_events"] == 10


def test_simulate_roundtrip_bitwise(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    assert run_cli("simulate", "--preset", "natural", "--out", str(a)) == 0
    assert run_cli("simulate", "--config", str(a / "metadata.json"), "--out", str(b)) == 0
    assert (a / "trajectory.csv").read_bytes() == (b / "trajectory.csv").read_bytes()
    assert (a / "events.json").read_bytes() == (b / "events.json").read_bytes()


def test_simulate_electron_preset_roundtrip(tmp_path):
    # the h-specified preset resolves T, and rerunning from the resolved
    # metadata must reproduce the identical file
    a = tmp_path / "a"
    b = tmp_path / "b"
    assert run_cli("simulate", "--preset", "electron-1e6", "--out", str(a)) == 0
    assert run_cli("simulate", "--config", str(a / "metadata.json"), "--out", str(b)) == 0
    assert (a / "trajectory.csv").read_bytes() == (b / "trajectory.csv").read_bytes()


def test_simulate_svg_format(tmp_path):
    out = tmp_path / "run"
    assert run_cli("simulate", "--preset", "natural", "--format", "svg", "--out", str(out)) == 0
    for name in ("trajectory.svg", "phase.svg"):
        body = (out / name).read_text()
        assert body.startswith("<svg") and body.rstrip().endswith("</svg>")


def test_simulate_json_format(tmp_path):
    out = tmp_path / "run"
    assert run_cli("simulate", "--preset", "natural", "--format", "json", "--out", str(out)) == 0
    data = json.loads((out / "trajectory.json").read_text())
    assert len(data["t"]) == 10001
    assert data["dXdt"][0] == 1.0


def test_simulate_el_residual_files(tmp_path):
    out = tmp_path / "run"
    cfg = write_cfg(tmp_path / "c.json", {"outputs": {"el_residuals": True}})
    assert run_cli("simulate", "--preset", "natural", "--config", cfg, "--out", str(out)) == 0
    for name in ("el_particle.csv", "el_cloud.csv"):
        header = (out / name).read_text().splitlines()[0]
        assert header == "t,residual,excluded_flag"


def test_simulate_ensemble_config(tmp_path):
    out = tmp_path / "run"
    cfg = write_cfg(tmp_path / "c.json", {"simulation": {"mode": "ensemble", "n_inertons": 2}})
    assert run_cli("simulate", "--preset", "natural", "--config", cfg, "--out", str(out)) == 0
    meta = json.loads((out / "metadata.json").read_text())
    assert meta["simulation"]["mode"] == "ensemble"
    assert meta["derived"]["n_events"] == 10


# ------------------------------------------------------------------- derive

def test_derive_natural(tmp_path, capsys):
    out = tmp_path / "d"
    assert run_cli("derive", "--preset", "natural", "--out", str(out)) == 0
    d = json.loads((out / "derived.json").read_text())
    assert d["quantized"]["lambda_dB"] == pytest.approx(1.0, rel=1e-12)
    assert d["quantized"]["Lambda"] == pytest.approx(10.0, rel=1e-12)
    assert d["resonator"]["ratio"] == pytest.approx(math.pi / 2.0, abs=1e-15)
    assert d["kinematics"]["nu"] == 0.5


def test_derive_electron_preset(tmp_path):
    out = tmp_path / "d"
    assert run_cli("derive", "--preset", "electron-1e6", "--out", str(out)) == 0
    d = json.loads((out / "derived.json").read_text())
    assert d["quantized"]["lambda_dB"] == pytest.approx(7.274e-10, rel=1e-3)
    assert d["quantized"]["T"] == pytest.approx(7.274e-16, rel=1e-3)


def test_derive_csv_format(tmp_path):
    out = tmp_path / "d"
    assert run_cli("derive", "--preset", "natural", "--format", "csv", "--out", str(out)) == 0
    lines = (out / "derived.csv").read_text().strip().splitlines()
    assert lines[0] == "group,name,value"
    assert any(line.startswith("quantized,lambda_dB,") for line in lines)


def test_derive_rejects_svg(tmp_path):
    assert run_cli("derive", "--preset", "natural", "--format", "svg", "--out", str(tmp_path)) == 1


# -------------------------------------------------------------------- check

def test_check_all_pass(tmp_path, capsys):
    out = tmp_path / "chk"
    code = run_cli("check", "--preset", "natural", "--seed", "42", "--out", str(out))
    assert code == 0
    lines = (out / "report.jsonl").read_text().strip().splitlines()
    assert len(lines) == 14
    for line in lines:
        obj = json.loads(line)
        assert obj["status"] == "pass"
    printed = capsys.readouterr().out
    assert "14/14 passed" in printed


def test_check_selection(tmp_path):
    out = tmp_path / "chk"
    code = run_cli(
        "check", "--select", "resonator_ratio,dirac_algebra", "--out", str(out)
    )
    assert code == 0
    lines = (out / "report.jsonl").read_text().strip().splitlines()
    assert [json.loads(x)["name"] for x in lines] == ["dirac_algebra", "resonator_ratio"]


def test_check_unknown_name(tmp_path):
    assert run_cli("check", "--select", "bogus", "--out", str(tmp_path)) == 1


# -------------------------------------------------------------------- sweep

def test_sweep_dt_convergence(tmp_path):
    out = tmp_path / "sw"
    code = run_cli(
        "sweep", "--preset", "natural", "--axis", "dt",
        "--values", "0.01,0.005,0.0025", "--out", str(out),
    )
    assert code == 0
    rows = (out / "summary.csv").read_text().strip().splitlines()
    assert rows[0] == "dt,max_oracle_error,max_invariant_residual,cyclic_action,lambda"
    errs = [float(r.split(",")[1]) for r in rows[1:]]
    assert errs[0] / errs[1] >= 8.0
    assert errs[1] / errs[2] >= 8.0
    for i in range(3):
        assert (out / f"dt_{i}" / "trajectory.csv").exists()
        assert (out / f"dt_{i}" / "metadata.json").exists()


def test_sweep_v0_wavelength_linearity(tmp_path):
    out = tmp_path / "sw"
    code = run_cli(
        "sweep", "--preset", "natural", "--axis", "v0", "--values", "1,5", "--out", str(out)
    )
    assert code == 0
    rows = (out / "summary.csv").read_text().strip().splitlines()[1:]
    lams = [float(r.split(",")[4]) for r in rows]
    assert lams[0] == pytest.approx(1.0)
    assert lams[1] == pytest.approx(5.0)  # lambda = v0 T


def test_sweep_failed_row_marked(tmp_path, capsys):
    out = tmp_path / "sw"
    code = run_cli(
        "sweep", "--preset", "natural", "--axis", "v0", "--values", "1,20", "--out", str(out)
    )
    assert code == 2  # one run failed
    rows = (out / "summary.csv").read_text().strip().splitlines()
    good = rows[1].split(",")
    bad = rows[2].split(",")
    assert float(good[1]) < 1e-6
    assert math.isnan(float(bad[1])) and math.isnan(float(bad[4]))
    assert "FAILED" in capsys.readouterr().err


def test_sweep_axis_validation(tmp_path):
    assert run_cli(
        "sweep", "--preset", "natural", "--axis", "flux", "--values", "1", "--out", str(tmp_path)
    ) == 1


def test_sweep_h_axis_drops_T(tmp_path):
    out = tmp_path / "sw"
    code = run_cli(
        "sweep", "--preset", "natural", "--axis", "h", "--values", "1.0,2.0", "--out", str(out)
    )
    assert code == 0
    meta = json.loads((out / "h_0" / "metadata.json").read_text())
    M = 1.0 / math.sqrt(1.0 - 0.01)
    assert meta["parameters"]["T"] == pytest.approx(1.0 / M, rel=1e-12)


# --------------------------------------------------------------- subprocess

def test_console_entry_point_subprocess(tmp_path):
    out = tmp_path / "run"
    proc = subprocess.run(
        [sys.executable, "-m", "inertonsim.cli", "simulate", "--preset", "natural",
         "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert "10 events" in proc.stdout
    assert (out / "trajectory.csv").exists()


def test_version_flag_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "inertonsim.cli", "--version"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "inertonsim" in proc.stdout
