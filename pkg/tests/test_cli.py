import csv
import os
import subprocess
import sys

import pytest

from alpfluids import cli
from alpfluids.config import ConfigError, SimConfig, dump_config, load_config, parse_config
from alpfluids.errors import NonFiniteStateError, SolverError
from alpfluids.presets import PRESETS, get_preset


def write(tmp_path, text, name="cfg.ini"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def preset_text(name="mhd2d-32", **subs):
    text = PRESETS[name].text
    for old, new in subs.items():
        text = text.replace(old.replace("_eq_", " = "), new)
    return text


# -- configuration -------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(PRESETS))
def test_presets_round_trip(name):
    cfg = PRESETS[name].config()
    assert parse_config(dump_config(cfg)) == cfg


def test_at_least_seven_presets_with_metadata():
    assert len(PRESETS) >= 7
    assert all(p.description and p.runtime_class for p in PRESETS.values())


def test_minimal_config_gets_defaults():
    cfg = parse_config("[grid]\nshape = 16, 16\n[model]\nid = hall\n[integrate]\ndt = 0.01\nt_end = 0.1\n")
    assert cfg.model.R_hall == SimConfig().model.R_hall and cfg.integrate.n_steps == 10


@pytest.mark.parametrize("text,key", [
    ("[grid]\nshape = 16, 16\n[model]\nid = mhd\n[integrate]\nt_end = 1\n", "integrate.dt"),
    ("[grid]\nshape = 16, 16\n[model]\nid = foo\n[integrate]\ndt = 0.1\nt_end = 1\n", "model.id"),
    ("[grid]\nshape = 15, 16\n[model]\nid = mhd\n[integrate]\ndt = 0.1\nt_end = 1\n", "grid.shape"),
    ("[grid]\nshape = 16, 16\n[model]\nid = mhd\ncolour = red\n[integrate]\ndt = 0.1\nt_end = 1\n", "model.colour"),
    ("[grid]\nshape = 16, 16\n[model]\nid = mhd\n[integrate]\ndt = 0.1\nt_end = 0.25\n", "integrate.t_end"),
    ("[grid]\nshape = 16, 16\n[model]\nid = mhd\nrho0 = 0\n[integrate]\ndt = 0.1\nt_end = 1\n", "model.rho0"),
    ("[grid]\nshape = 16, 16\n[model]\nid = mhd\n[closure]\nsigma = 1.0\n[integrate]\ndt = 0.1\nt_end = 1\n",
     "closure.sigma"),
    ("[grid]\nshape = 16, 16\n[model]\nid = mhd\n[integrate]\ndt = nan\nt_end = 1\n", "integrate.dt"),
])
def test_invalid_configs_name_the_key(text, key):
    with pytest.raises(ConfigError) as exc:
        parse_config(text)
    assert exc.value.key == key and key in str(exc.value)


def test_loop_outside_box_rejected():
    text = preset_text(**{"center=2.0,4.0 radius=1.0": "center=2.0,4.0 radius=3.0"})
    with pytest.raises(ConfigError) as exc:
        parse_config(text)
    assert exc.value.key == "loops.loop2"


def test_missing_file():
    with pytest.raises(ConfigError):
        load_config("/nonexistent/cfg.ini")


# -- command line ---------------------------------------------------------------

def test_run_preset_writes_csv(tmp_path, capsys):
    code = cli.main(["run", "--preset", "mhd2d-32", "--steps-override", "10", "--output-dir", str(tmp_path)])
    assert code == 0
    out = capsys.readouterr().out
    assert "[integrate]" in out and "t_end = 0.01" in out
    rows = list(csv.DictReader(open(tmp_path / "diagnostics.csv")))
    assert "hamiltonian" in rows[0] and len(rows) == 2
    assert parse_config((tmp_path / "resolved_config.ini").read_text()).integrate.n_steps == 10


def test_run_preset_file(tmp_path):
    path = write(tmp_path, PRESETS["mhd2d-32"].text, "mhd2d-32.ini")
    out = tmp_path / "out"
    assert cli.main(["run", path, "--steps-override", "3", "--output-dir", str(out), "--quiet"]) == 0
    assert (out / "diagnostics.csv").exists()


def test_negative_dt_exits_2(tmp_path, capsys):
    path = write(tmp_path, preset_text(**{"dt_eq_0.001": "dt = -1"}))
    assert cli.main(["run", path, "--output-dir", str(tmp_path / "o")]) == 2
    err = capsys.readouterr().err
    assert "integrate.dt" in err
    assert not (tmp_path / "o").exists()


def test_non_positive_density_region_exits_2(tmp_path, capsys):
    text = preset_text(**{"seed_eq_11\n": "seed = 11\ndensity_shaping = linear\nrho0 = 1.0\n"}).replace("\namplitude = 0.1", "\namplitude = 1.5")
    path = write(tmp_path, text)
    assert cli.main(["run", path, "--output-dir", str(tmp_path / "o")]) == 2
    assert "model.rho0" in capsys.readouterr().err
    assert not (tmp_path / "o").exists()


def test_unknown_preset_exits_2(capsys):
    assert cli.main(["run", "--preset", "nope"]) == 2
    assert "preset" in capsys.readouterr().err


def test_negative_steps_override_exits_2(capsys):
    assert cli.main(["run", "--preset", "mhd2d-32", "--steps-override", "-1"]) == 2


def test_zero_steps_gives_initial_diagnostics(tmp_path):
    assert cli.main(["run", "--preset", "hall2d-32", "--steps-override", "0", "--output-dir", str(tmp_path),
                     "--quiet"]) == 0
    rows = list(csv.DictReader(open(tmp_path / "diagnostics.csv")))
    assert len(rows) == 1 and rows[0]["step"] == "0"


def test_seed_override_is_recorded(tmp_path):
    assert cli.main(["run", "--preset", "mhd2d-32", "--steps-override", "0", "--seed", "5",
                     "--output-dir", str(tmp_path), "--quiet"]) == 0
    assert load_config(tmp_path / "resolved_config.ini").model.seed == 5


def test_output_dir_precedence(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUTPUT_ENV, str(tmp_path / "env"))
    assert cli.main(["run", "--preset", "mhd2d-32", "--steps-override", "0", "--quiet"]) == 0
    assert (tmp_path / "env" / "mhd2d-32" / "diagnostics.csv").exists()
    text = preset_text(**{"snapshots_eq_final": f"snapshots = final\ndir = {tmp_path / 'cfgdir'}"})
    path = write(tmp_path, text)
    assert cli.main(["run", path, "--steps-override", "0", "--quiet"]) == 0
    assert (tmp_path / "cfgdir" / "diagnostics.csv").exists()
    assert cli.main(["run", path, "--steps-override", "0", "--quiet", "--output-dir", str(tmp_path / "flag")]) == 0
    assert (tmp_path / "flag" / "diagnostics.csv").exists()


@pytest.mark.parametrize("exc,code", [(NonFiniteStateError(4, "m"), 3), (SolverError("no convergence"), 4)])
def test_runtime_failures_map_to_exit_codes(monkeypatch, tmp_path, capsys, exc, code):
    def boom(*a, **k):
        raise exc
    monkeypatch.setattr(cli, "run_simulation", boom)
    assert cli.main(["run", "--preset", "mhd2d-32", "--output-dir", str(tmp_path), "--quiet"]) == code
    assert exc.code in capsys.readouterr().err


def test_presets_listing(capsys):
    assert cli.main(["presets"]) == 0
    out = capsys.readouterr().out
    assert all(name in out for name in PRESETS)


def test_presets_dump_and_write(tmp_path, capsys):
    assert cli.main(["presets", "--dump", "hall2d-32"]) == 0
    assert parse_config(capsys.readouterr().out) == get_preset("hall2d-32").config()
    assert cli.main(["presets", "--write", str(tmp_path)]) == 0
    assert len(list(tmp_path.glob("*.ini"))) == len(PRESETS)


def test_verify_liealg(capsys):
    assert cli.main(["verify", "liealg"]) == 0
    out = capsys.readouterr().out
    assert "jacobi" in out and "Ad-invariance" in out and "FAIL" not in out


def test_verify_reports_failure(monkeypatch, capsys):
    from alpfluids import verify

    monkeypatch.setattr(verify, "liealg_checks", lambda: [verify.Check(None, "broken", 1.0, 0.0)])
    assert cli.main(["verify", "liealg"]) == 1
    assert "broken" in capsys.readouterr().out


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "alpfluids", "presets"], capture_output=True, text=True,
                         env={**os.environ})
    assert out.returncode == 0 and "mhd2d-32" in out.stdout
