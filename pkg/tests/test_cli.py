import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from dnaqpu.cli import run
from dnaqpu.dynamics import ramsey_entangle
from dnaqpu.fermion import FermionIntegrals, save_integrals
from dnaqpu.hamiltonians import SpinSystemParams

SPIN = {"units": "rad/s", "omega0": 5.0, "j_hz": 0.3, "d": 0.4}


def write_cfg(tmp_path, cfg, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(cfg))
    return str(p)


def test_ramsey_csv(tmp_path):
    cfg = {"spin": SPIN, "times": {"units": "s", "start": 0, "stop": 20, "count": 200}}
    out = tmp_path / "r.csv"
    assert run(["ramsey", "--config", write_cfg(tmp_path, cfg), "--output", str(out)]) == 0
    rows = list(csv.reader(out.read_text().splitlines()))
    assert rows[0] == ["t", "p_uu", "p_ud", "p_du", "p_dd", "concurrence", "coh_re", "coh_im"]
    data = np.array(rows[1:], dtype=float)
    assert len(data) == 200
    assert np.allclose(data[:, 1:5].sum(axis=1), 1, atol=1e-9)
    oracle = ramsey_entangle(SpinSystemParams(5.0, 0.3, 0.4), np.linspace(0, 20, 200))
    assert np.allclose(data[:, 1:5], oracle.populations, atol=1e-15)


def test_ramsey_hz_units(tmp_path):
    cfg = {"spin": {"units": "Hz", "omega0": 1.0, "d": 0.1}, "times": {"units": "s", "stop": 1, "count": 3}}
    out = tmp_path / "r.json"
    assert run(["ramsey", "-c", write_cfg(tmp_path, cfg), "-o", str(out), "--format", "json"]) == 0
    rep = json.loads(out.read_text())
    assert len(rep["rows"]) == 3


def test_bell_report(tmp_path, capsys):
    assert run(["bell", "--variant", "Tz"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["fidelity"] == pytest.approx(1.0, abs=1e-12)
    assert rep["variant"] == "Tz"
    assert rep["circuit"][0] == "QUBITS 2"


def test_vqe_missing_file(tmp_path, capsys):
    code = run(["vqe", "--integrals", str(tmp_path / "missing.json")])
    assert code == 4
    err = capsys.readouterr().err.strip().splitlines()
    assert len(err) == 1 and err[0].startswith("ERROR E_IO:")


def test_vqe_report(tmp_path, capsys):
    ints = FermionIntegrals(M=2, h=np.diag([-1.0, -0.5]),
                            v=((0, 0, 0, 0, 0.7), (1, 1, 1, 1, 0.6), (0, 0, 1, 1, 0.3), (1, 1, 0, 0, 0.3)))
    p = tmp_path / "ints.json"
    save_integrals(ints, p)
    assert run(["vqe", "--integrals", str(p)]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert len(rep["g"]) == 6
    assert rep["sector_ground_energy"] == pytest.approx(rep["exact_energy"], abs=1e-10)


def test_vqe_structure_error(tmp_path, capsys):
    p = tmp_path / "ints.json"
    save_integrals(FermionIntegrals(M=2, h=[[-1.0, -0.2], [-0.2, -0.5]], v=((0, 0, 0, 0, 0.7),)), p)
    assert run(["vqe", "--integrals", str(p)]) == 3
    assert capsys.readouterr().err.startswith("ERROR E_PHYSICS:")


def test_unitless_frequency_refused(capsys):
    code = run(["ramsey", "--set", "spin.omega0=5", "--set", "times.units=s", "--set", "times.stop=1"])
    assert code == 2
    assert capsys.readouterr().err.startswith("ERROR E_CONFIG:")


def test_bad_json_config(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{")
    assert run(["kinetics", "--config", str(p)]) == 2


def test_missing_config_file(tmp_path):
    assert run(["kinetics", "--config", str(tmp_path / "nope.json")]) == 4


def test_bad_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["fly"])
    assert exc.value.code == 2
    assert "E_CONFIG" in capsys.readouterr().err


def test_physics_error(capsys):
    code = run(["kinetics", "--set", 'kinetics.r={"value": -1, "units": "angstrom"}'])
    assert code == 3


def test_kinetics_output(capsys):
    assert run(["kinetics"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert set(rep) == {"tau_pt_s", "tau_s_s", "occupation", "gap_eV"}
    assert rep["occupation"] == pytest.approx(1.73e-4, rel=1e-12)


def test_kinetics_units(capsys):
    args = ["kinetics", "--set", 'kinetics.deltaE={"value": 1400, "units": "meV"}',
            "--set", 'kinetics.gap={"value": 0.2, "units": "eV"}']
    assert run(args) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["tau_s_s"] == pytest.approx(4.70e-16, rel=1e-3)
    assert rep["gap_eV"] == 0.2


def test_spectrum_and_spatial(tmp_path):
    out = tmp_path / "s.json"
    assert run(["spectrum", "--set", "zfs.units=rad/s", "--set", "zfs.D=2", "--set", "zfs.E=0.3",
                "-o", str(out)]) == 0
    f = [t["frequency"] for t in json.loads(out.read_text())["transitions"]]
    assert f == pytest.approx([0.6, 1.7, 2.3])
    grid = tmp_path / "g.csv"
    assert run(["spatial", "--set", "spatial.points=11", "-o", str(grid)]) == 0
    assert len(grid.read_text().splitlines()) == 122


def test_evolve_dephasing(tmp_path):
    out = tmp_path / "e.csv"
    args = ["evolve", "--set", "spin.units=rad/s", "--set", "spin.d=1", "--set", "times.units=s",
            "--set", "times.stop=2", "--set", "times.count=5", "--set", "evolve.initial=Tz",
            "--set", "evolve.dephasing.units=1/s", "--set", "evolve.dephasing.gamma1=0.5",
            "-o", str(out)]
    assert run(args) == 0
    data = np.loadtxt(out, delimiter=",", skiprows=1)
    assert data.shape == (5, 8)
    assert np.all(np.diff(data[:, 6]) < 0)


@pytest.mark.parametrize("argv", [
    ["ramsey", "--set", "spin.units=rad/s", "--set", "spin.omega0=5", "--set", "spin.d=0.4",
     "--set", "times.units=s", "--set", "times.stop=10", "--set", "times.count=50"],
    ["bell", "--variant", "Tx"],
    ["kinetics", "--seed", "7"],
    ["spatial", "--set", "spatial.points=21"],
])
def test_byte_identical(tmp_path, argv):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(argv + ["-o", str(a)]) == 0
    assert run(argv + ["-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_console_script_subprocess(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "dnaqpu.cli", "bell", "--variant", "Tz_star"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["fidelity"] == pytest.approx(1.0)
    proc = subprocess.run([sys.executable, "-m", "dnaqpu.cli", "vqe", "--integrals",
                           str(tmp_path / "x.json")], capture_output=True, text=True, check=False)
    assert proc.returncode == 4 and proc.stderr.startswith("ERROR E_IO")
