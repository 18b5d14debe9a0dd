import json
import pathlib

import numpy as np
import pytest

import licnet

DOCS = pathlib.Path(__file__).resolve().parents[2] / "documents"


def half_useless_bsc(a):
    return np.array([[0.5, 0.5, 1 - a, a], [0.5, 0.5, a, 1 - a]])


def closed_grid(c):
    return np.array([[c / 2, c, c], [c / 4, c / 2, c / 2], [c / 4, c / 2, c / 2]])


def test_p2p_closed_form():
    s2, l = licnet.p2p_parameter(half_useless_bsc(0.1), np.full(4, 0.25))
    assert s2 == pytest.approx(0.5 * 0.8**2, abs=1e-12)
    assert np.linalg.norm(l) == pytest.approx(1.0)
    assert abs(l[0]) < 1e-9 and abs(l[1]) < 1e-9


def test_bc_common_below_private():
    w2 = np.array([[0.9, 0.1, 0.5, 0.5], [0.1, 0.9, 0.5, 0.5]])
    r = licnet.bc_parameters(half_useless_bsc(0.1), w2, np.full(4, 0.25))
    assert r["sigma0_sq"] <= min(r["sigma1_sq"], r["sigma2_sq"]) + 1e-9
    assert r["duality_gap"] <= 1e-6


def test_invalid_channel_raises():
    with pytest.raises(licnet.LicnetError, match="SumNotOne"):
        licnet.p2p_parameter(np.array([[0.5, 0.5], [0.4, 0.5]]), np.array([0.5, 0.5]))
    assert issubclass(licnet.LicnetError, ValueError)


def test_grid_operations():
    g = closed_grid(0.36)
    assert licnet.validate_grid(g) == []
    value, label = licnet.identical_layer_sum_capacity(g)
    assert label == "s11" and value == pytest.approx(0.18)
    modes = licnet.mode_values(g)
    assert list(modes)[3] == "M(s10,s01)"
    assert modes["M(s10,s01)"] == pytest.approx(2 * 0.36 / 5)
    fb = licnet.feedback_ic_parameters(g)
    assert fb["sigma10_fb_sq"] == pytest.approx(0.12)
    assert fb["route10"] == "cross-then-common"


def test_paths():
    g = closed_grid(0.36)
    assert licnet.harmonic_mean([2.0, 6.0]) == pytest.approx(3.0)
    s2, path = licnet.best_path([g, g], 1, 1)
    assert path[0] == 1 and path[-1] == 1 and len(path) == 3
    value, path = licnet.sum_capacity([g] * 3)
    assert len(path) == 4 and value > 0


def test_repair_balances():
    g = closed_grid(0.36)
    delta = np.zeros((3, 3))
    delta[1, 0] = 0.5
    delta[0, 2] = 0.3
    r = licnet.repair_to_balanced(delta, g)
    flow = r["delta"] * g
    assert np.allclose(flow.sum(axis=1), flow.sum(axis=0), atol=1e-12)
    assert r["max_change"] <= r["change_bound"] + 1e-12


def test_run_command_on_shipped_document():
    doc = json.loads((DOCS / "ic_quaternary.json").read_text())
    out = licnet.run_command("sumcap", doc, alpha=0.4)
    assert out["value"] == pytest.approx(0.04, abs=1e-6)
    with pytest.raises(licnet.LicnetError, match="SchemaError"):
        licnet.run_command("params", {"version": 1})
