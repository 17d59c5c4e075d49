import io
import json

import numpy as np
import pytest

from lhsp6.cli import (
    EXIT_FAIL,
    EXIT_INPUT,
    EXIT_NUMERIC,
    EXIT_OK,
    InputError,
    Scenario,
    fmt,
    load_trajectories,
    main,
    run_verify,
)


def run(argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out)
    return code, out.getvalue()


def write_scenario(tmp_path, obj, name="scenario.json"):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return path


def simulate(tmp_path, obj, name="traj.csv"):
    sc = write_scenario(tmp_path, obj, name + ".scenario.json")
    out = tmp_path / name
    code, _ = run(["simulate", "--scenario", sc, "--out", out])
    assert code == EXIT_OK
    return out


RANDOM7 = {"algebra": "sp6", "coefficients": "random", "initial": {"random": 7}, "grid": 100, "seed": 3}


def test_fmt_round_trips():
    for x in (0.1, 1 / 3, -2.5e-300, 1e16):
        assert float(fmt(x)) == x


@pytest.mark.parametrize("scope", ["sp6", "su3", "realization", "casimir"])
def test_verify_scopes_pass(scope):
    code, text = run(["verify", "--scope", scope])
    assert code == EXIT_OK
    assert "FAIL" not in text


def test_verify_sp6_reports_closure_and_jacobi():
    lines = [c.line() for c in run_verify("sp6")]
    assert any("210" in l and "PASS" in l for l in lines)
    assert any("Jacobi" in l and "PASS" in l for l in lines)


def test_verify_casimir_reports_c2_identity():
    lines = [c.line() for c in run_verify("casimir")]
    assert any("C2" in l and "PASS" in l for l in lines)


@pytest.mark.parametrize("fault,scope", [("sp6-constant", "sp6"), ("su3-constant", "su3"), ("casimir", "casimir")])
def test_verify_fault_injection(fault, scope):
    code, text = run(["verify", "--scope", scope, "--inject-fault", fault])
    assert code == EXIT_FAIL
    failing = [l for l in text.splitlines() if l.startswith("FAIL")]
    assert failing and all(len(l) > len("FAIL ") for l in failing)


def test_zero_scenario_constant_rows(tmp_path):
    z0 = [0.5, -1.0, 2.0, 0.0, 0.25, 3.0]
    out = simulate(tmp_path, {"algebra": "sp6", "initial": z0, "grid": 5})
    data = load_trajectories([out])
    assert np.array_equal(data.states[:, 0, :], np.tile(z0, (5, 1)))


def test_cho_scenario_closed_form(tmp_path):
    obj = {"preset": {"name": "cho", "m": [1, 1, 1], "k": [1, 4, 9], "gamma": [0, 0, 0]},
           "initial": [1, 1, 1, 0, 0, 0], "grid": 51}
    data = load_trajectories([simulate(tmp_path, obj)])
    t = data.times
    z = data.states[:, 0, :]
    for i, w in enumerate((1.0, 2.0, 3.0)):
        assert np.abs(z[:, i] - np.cos(w * t)).max() <= 1e-8
        assert np.abs(z[:, 3 + i] + w * np.sin(w * t)).max() <= 1e-8


def test_em_scenario_without_static_warning(tmp_path, capsys):
    obj = {"preset": {"name": "em", "m": [1, 1, 1], "e": [1, 1, 1],
                      "gamma": {"type": "polynomial", "coeffs": [0, 0, 1]}},
           "window": [0, 2], "grid": 11}
    out = simulate(tmp_path, obj)
    assert "warning" not in capsys.readouterr().err
    assert "# warning" not in out.read_text()


def test_em_scenario_with_static_field_warns(tmp_path, capsys):
    obj = {"preset": {"name": "em", "m": [1, 1, 1], "e": [1, 1, 1], "gamma": 1.0}, "window": [0, 1], "grid": 3}
    out = simulate(tmp_path, obj)
    assert "warning" in capsys.readouterr().err
    assert "# warning" in out.read_text()


def test_simulate_header_echoes_coefficients(tmp_path):
    text = simulate(tmp_path, {"algebra": "sp6", "coefficients": {"b10": 1, "b16": 1}, "grid": 3}).read_text()
    assert "# coefficient b10" in text and "# coefficient b16" in text
    assert "t,q1,q2,q3,p1,p2,p3,copy" in text


def test_simulate_is_deterministic(tmp_path):
    a = simulate(tmp_path, RANDOM7, "a.csv").read_text()
    b = simulate(tmp_path, RANDOM7, "b.csv").read_text()
    assert a == b


def test_simulate_json_output(tmp_path):
    sc = write_scenario(tmp_path, {"algebra": "su3", "coefficients": {"a1": 1}, "grid": 4})
    code, _ = run(["simulate", "--scenario", sc, "--out", tmp_path / "t.json"])
    assert code == EXIT_OK
    data = load_trajectories([tmp_path / "t.json"])
    assert data.states.shape == (4, 1, 6)


def test_scenario_round_trip():
    sc = Scenario.from_json({**RANDOM7, "window": [0, 5]})
    again = Scenario.from_json(json.loads(json.dumps(sc.to_json())))
    assert again == sc


@pytest.mark.parametrize("obj,where", [
    ({"algebra": "so5"}, "algebra"),
    ({"algebra": "sp6", "coefficients": {"b22": 1}}, "coefficients.b22"),
    ({"algebra": "sp6", "coefficients": "random"}, "seed"),
    ({"algebra": "sp6", "window": [1]}, "window"),
    ({"algebra": "sp6", "initial": [[1, 2, 3]]}, "initial[0]"),
    ({"preset": {"name": "cho", "m": [1, 1], "k": [1, 1, 1], "gamma": [0, 0, 0]}}, "preset.m"),
])
def test_scenario_schema_errors(obj, where):
    with pytest.raises(InputError) as info:
        Scenario.from_json(obj)
    assert where in str(info.value)


def test_unknown_scenario_key():
    with pytest.raises(InputError, match="unknown keys"):
        Scenario.from_json({"algebra": "sp6", "tolerance": 1})


def test_schema_error_exit_code(tmp_path, capsys):
    sc = write_scenario(tmp_path, {"algebra": "sp6", "grid": 0})
    code, _ = run(["simulate", "--scenario", sc])
    assert code == EXIT_INPUT
    assert "grid" in capsys.readouterr().err


def test_invalid_json_reports_position(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"algebra": "sp6",\n "grid": }')
    code, _ = run(["simulate", "--scenario", path])
    assert code == EXIT_INPUT
    assert "bad.json:2:" in capsys.readouterr().err


def test_invalid_preset_is_input_error(tmp_path):
    obj = {"preset": {"name": "cho", "m": [1, 1, 1], "k": [0.1, 1, 1], "gamma": [1, 0, 0]}}
    code, _ = run(["simulate", "--scenario", write_scenario(tmp_path, obj)])
    assert code == EXIT_INPUT


def test_invariants_single_copy_F1_zero(tmp_path):
    traj = simulate(tmp_path, {"algebra": "sp6", "coefficients": "random", "initial": {"random": 1}, "seed": 1,
                               "grid": 11})
    report = tmp_path / "inv.csv"
    code, _ = run(["invariants", "--in", traj, "--out", report])
    assert code == EXIT_OK
    rows = [r.split(",") for r in report.read_text().splitlines()[1:]]
    f1 = [float(r[2]) for r in rows if r[0] == "F1"]
    assert len(f1) == 11 and all(v == 0.0 for v in f1)


def test_invariants_pairings_conserved(tmp_path):
    traj = simulate(tmp_path, {**RANDOM7, "initial": {"random": 2}})
    report = tmp_path / "inv.csv"
    code, text = run(["invariants", "--in", traj, "--out", report, "--tolerance", "1e-8"])
    assert code == EXIT_OK, text
    header = report.read_text().splitlines()[0]
    assert header == "quantity,t,value,drift"


def test_invariants_tolerance_failure(tmp_path):
    traj = simulate(tmp_path, {**RANDOM7, "initial": {"random": 2}})
    code, text = run(["invariants", "--in", traj, "--tolerance", "1e-300"])
    assert code == EXIT_FAIL
    assert "max drift" in text and "FAIL" in text


def test_invariants_multiple_files(tmp_path):
    a = simulate(tmp_path, {**RANDOM7, "initial": {"random": 1}}, "a.csv")
    b = simulate(tmp_path, {**RANDOM7, "initial": {"random": 1}, "seed": 3}, "b.csv")
    code, text = run(["invariants", "--in", a, b])
    assert code == EXIT_OK and "copies=2" in text


def test_invariants_grid_mismatch(tmp_path):
    a = simulate(tmp_path, {"algebra": "sp6", "grid": 5}, "a.csv")
    b = simulate(tmp_path, {"algebra": "sp6", "grid": 6}, "b.csv")
    code, _ = run(["invariants", "--in", a, b])
    assert code == EXIT_INPUT


def test_superpose_signed(tmp_path):
    traj = simulate(tmp_path, RANDOM7)
    rec = tmp_path / "rec.csv"
    code, text = run(["superpose", "--in", traj, "--out", rec])
    assert code == EXIT_OK
    err = float(text.split("max relative error=")[1].split()[0])
    assert err <= 1e-6
    assert "rel_error" in rec.read_text()


def test_superpose_squared_matches_signed(tmp_path):
    traj = simulate(tmp_path, RANDOM7)
    code_s, _ = run(["superpose", "--in", traj, "--out", tmp_path / "s.csv"])
    code_q, text = run(["superpose", "--in", traj, "--mode", "squared", "--out", tmp_path / "q.csv"])
    assert code_s == code_q == EXIT_OK
    assert "candidates" in text
    s = load_reconstruction(tmp_path / "s.csv")
    q = load_reconstruction(tmp_path / "q.csv")
    assert np.abs(s - q).max() <= 1e-8 * np.abs(s).max()


def load_reconstruction(path):
    rows = [l for l in path.read_text().splitlines() if l and not l.startswith("#")]
    return np.array([[float(x) for x in r.split(",")[1:7]] for r in rows[1:]])


def test_superpose_duplicated_solutions(tmp_path, capsys):
    rng = np.random.default_rng(0)
    pts = rng.normal(size=(7, 6))
    pts[5] = pts[4]
    traj = simulate(tmp_path, {"algebra": "sp6", "coefficients": "random", "seed": 2,
                               "initial": pts.tolist(), "grid": 5})
    code, _ = run(["superpose", "--in", traj])
    assert code == EXIT_NUMERIC
    assert "t =" in capsys.readouterr().err


def test_superpose_displayed_reading_is_underdetermined(tmp_path):
    traj = simulate(tmp_path, RANDOM7)
    code, _ = run(["superpose", "--in", traj, "--reading", "displayed"])
    assert code == EXIT_NUMERIC


def test_superpose_needs_seven_copies(tmp_path):
    traj = simulate(tmp_path, {**RANDOM7, "initial": {"random": 3}})
    code, _ = run(["superpose", "--in", traj])
    assert code == EXIT_INPUT


def test_casimir_output(tmp_path):
    code, text = run(["casimir"])
    assert code == EXIT_OK and text.startswith("C2 = ")
    out = tmp_path / "c2h.txt"
    code, _ = run(["casimir", "--symbols", "h", "--out", out])
    body = out.read_text()
    assert "-4 * h10 h16" in body and "-2 * h11 h17" in body
    code, text = run(["casimir", "--order", "4"])
    assert code == EXIT_OK and text.startswith("C4 = ")
