import json
import math
import os

import numpy as np
import pytest

import homog1d as h


def test_multiplier_values():
    assert h.euler_multiplier(0) == pytest.approx(0.25)
    assert h.euler_multiplier(2) == 0.0
    assert h.sqg_multiplier(3) == pytest.approx(-8.0 / 33.0)


def test_field_round_trip():
    t = h.CircleField.nodes(64)
    f = h.CircleField(np.sin(4 * t))
    assert len(f) == 64
    assert np.allclose(f.values, np.sin(4 * t))
    assert abs(f.coeff(4) - 0.5j) < 1e-14
    assert f.evaluate(0.3) == pytest.approx(math.sin(1.2), abs=1e-12)


def test_bad_size_raises():
    with pytest.raises(h.SizeError):
        h.CircleField(np.zeros(100))


def test_euler_run_conserves_linf():
    f = h.CircleField.sample(128, lambda t: 1 + 0.25 * math.cos(4 * t))
    out = h.run_euler(f, h.SymmetrySpec(4), t_end=1.0, sample_interval=0.5)
    rows = out["rows"]
    assert len(rows) == 3
    assert abs(rows[-1]["linf"] - rows[0]["linf"]) < 1e-6
    assert not out["aborted"]


def test_gap_system():
    assert h.hamiltonian(math.pi / 6, math.pi / 6) == pytest.approx(1.5)
    rep = h.gap_period(1.2)
    assert rep["kind"] == "periodic"
    assert rep["closure"] < 1e-4


def test_sqg_run_resolved():
    g = h.CircleField.sample(128, lambda t: math.sin(2 * t))
    out = h.run_sqg(g, "sqg-exact", t_end=0.2)
    assert out["verdict"] == "resolved"


def test_lift_solid_body():
    one = h.CircleField(np.ones(32))
    v = h.lift_euler(one, 1.0, 2.0)
    assert v["u"][0] == pytest.approx(-1.0, abs=1e-10)
    assert v["u"][1] == pytest.approx(0.5, abs=1e-10)


def test_config_errors_name_the_field():
    with pytest.raises(h.ConfigError, match="n"):
        h.config_text("model = euler1d\nn = 100\n")


def test_run_experiment(tmp_path, monkeypatch):
    monkeypatch.setenv("FLUIDS_OUTPUT_DIR", str(tmp_path))
    out = h.run_experiment("model = euler1d\nn = 32\nt_end = 0.2\nname = py\n")
    assert out["exit_code"] == 0
    assert os.path.isdir(out["directory"])
    assert out["manifest"]["model"] == "euler1d"
    with open(os.path.join(out["directory"], "manifest.json")) as fh:
        assert json.load(fh)["model"] == "euler1d"
