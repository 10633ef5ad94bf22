import numpy as np
import pytest

from waveheat.cli import parse_config_text, run
from waveheat.core import EnergyRecord
from waveheat.solvers import ConfigError

PARAMS = """[params]
a = 0.5
b = 0.1
c = 4
d = 0.2
epsilon = 0.01
mu = 0.1
"""


@pytest.fixture
def cfg_file(tmp_path):
    p = tmp_path / "run.cfg"
    p.write_text(PARAMS + "[grid]\nnx = 40\nt_final = 1\n")
    return p


def test_parse_minimal():
    cfg = parse_config_text(PARAMS)
    assert cfg.nx == 100 and cfg.simulation().dt == pytest.approx(0.5 / 100)
    assert cfg.eps_list == (0.1, 0.05, 0.025, 0.0125)
    assert cfg.trials == 1000 and cfg.seed == 0


def test_parse_comments_and_whitespace():
    cfg = parse_config_text("# header\n" + PARAMS.replace("a = 0.5", "  a=0.5   # damping")
                            + "[experiment]\neps_list = 0.2, 0.1,0.05\n")
    assert cfg.params.a == 0.5 and cfg.eps_list == (0.2, 0.1, 0.05)


@pytest.mark.parametrize("text, match", [
    (PARAMS.replace("c = 4\n", ""), "c"),
    (PARAMS.replace("epsilon = 0.01", "epsilon = -1"), "epsilon"),
    (PARAMS.replace("b = 0.1", "b = zero"), "line 3"),
    (PARAMS + "colour = 1\n", "unknown key"),
    (PARAMS + "[grid]\nnx = 10.5\n", "integer"),
    (PARAMS + "[extra]\n", "unknown section"),
    (PARAMS + "[ic]\nu0 = wobble 2\n", "line 9"),
])
def test_parse_errors(text, match):
    with pytest.raises(ConfigError, match=match):
        parse_config_text(text)


def test_exit_codes(cfg_file, tmp_path, capsys):
    assert run(["validate", "--config", str(cfg_file)]) == 0
    assert "T1_4" in capsys.readouterr().out
    assert run(["nope", "--config", str(cfg_file)]) == 1
    assert run(["validate"]) == 1
    bad = tmp_path / "bad.cfg"
    bad.write_text("[params]\na = 1\n")
    assert run(["validate", "--config", str(bad)]) == 1
    assert run(["validate", "--config", str(tmp_path / "missing.cfg")]) == 1
    assert "error" in capsys.readouterr().err


def test_numerical_error_exit(cfg_file, monkeypatch):
    from waveheat import cli
    from waveheat.core import NumericalError

    def boom(*a, **k):
        raise NumericalError("non-finite state at step 3")
    monkeypatch.setattr(cli, "simulate_coupled", boom)
    assert run(["simulate", "--config", str(cfg_file)]) == 2


def test_layer_needs_positive_c(tmp_path):
    p = tmp_path / "sing.cfg"
    p.write_text(PARAMS.replace("c = 4", "c = 0").replace("b = 0.1", "b = 0")
                 + "[grid]\nnx = 10\nt_final = 1\n")
    assert run(["simulate", "--config", str(p), "--system", "layer", "--out",
                str(tmp_path / "x.csv")]) == 1  # c must be > 0 for the layer


@pytest.mark.parametrize("system", ["full", "reduced", "layer"])
def test_simulate_csv(cfg_file, tmp_path, system):
    out = tmp_path / f"{system}.csv"
    assert run(["simulate", "--config", str(cfg_file), "--system", system, "--out", str(out)]) == 0
    raw = out.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert lines[0] == "t,E,V1,W2,V2,u1,ut1,p0,p1"
    data = np.loadtxt(out, delimiter=",", skiprows=1)
    assert data.shape == (81, len(EnergyRecord.FIELDS))
    # 17 significant digits round-trip exactly
    first = lines[1].split(",")
    assert all(float(f"{float(s):.16e}") == float(s) for s in first)
    assert len(first[1].split("e")[0].replace("-", "").replace(".", "")) == 17


def test_spectrum(cfg_file, tmp_path):
    out = tmp_path / "spec.csv"
    assert run(["spectrum", "--config", str(cfg_file), "--out", str(out)]) == 0
    data = np.loadtxt(out, delimiter=",", skiprows=1)
    assert out.read_text().startswith("re,im\n")
    assert data.shape == (121, 2) and np.all(np.diff(data[:, 0]) <= 0) and data[0, 0] < 0


def test_tikhonov_outputs(cfg_file, tmp_path):
    out = tmp_path / "tk"
    assert run(["tikhonov", "--config", str(cfg_file), "--eps-list", "0.1,0.05,0.025",
                "--out", str(out)]) == 0
    slopes = (out / "slopes.txt").read_text().split()
    assert slopes[0] == "slope_e_u" and slopes[2] == "slope_e_p" and len(slopes) == 4
    assert (out / "summary.csv").read_text().startswith("epsilon,e_u_sup,e_p_sup\n")
    assert len(list(out.glob("eps_*.csv"))) == 3
    assert run(["tikhonov", "--config", str(cfg_file), "--eps-list", "0.1,x"]) == 1


def test_audit_exit_code(cfg_file, tmp_path):
    out = tmp_path / "audit.txt"
    assert run(["audit", "--config", str(cfg_file), "--out", str(out)]) == 3
    assert "layer_L2_rate" in out.read_text()


def test_inequalities(cfg_file, tmp_path):
    out = tmp_path / "ineq.txt"
    assert run(["inequalities", "--config", str(cfg_file), "--trials", "20", "--out",
                str(out)]) == 0
    text = out.read_text()
    assert "A4_i0," in text and "trials=20 seed=0" in text
