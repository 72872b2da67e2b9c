import csv
import io
import json
import math

import numpy as np
import pytest

from aimbound import cli
from aimbound.aim import AimConvergenceError


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def table(text):
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def test_kratzer_closed_spectrum(capsys):
    code, out, _ = run(
        ["spectrum", "--potential", "kratzer", "--A", "1", "--B", "0", "--D", "3", "--n-max", "2"], capsys
    )
    assert code == 0
    rows = table(out)
    assert [float(r["E_closed"]) for r in rows] == pytest.approx([-0.5, -0.125, -1 / 18], rel=1e-15)
    assert all(r["E_aim"] == "" for r in rows)


def test_oscillator_footnote_and_compat_switch(capsys):
    code, out, _ = run(["spectrum", "--potential", "oscillator", "--D", "1", "--n-max", "1"], capsys)
    assert code == 0
    assert [float(r["E_closed"]) for r in table(out)] == [0.5, 2.5]
    note = [l for l in out.splitlines() if l.startswith("# note:")]
    assert len(note) == 1 and "1.5" in note[0]
    code, out, _ = run(
        ["spectrum", "--potential", "oscillator", "--D", "1", "--n-max", "1", "--paper-compat"], capsys
    )
    assert [float(r["E_closed"]) for r in table(out)] == [0.5, 1.5]
    assert "# note:" not in out


@pytest.mark.parametrize(
    "args",
    [
        ["--potential", "oscillator", "--omega", "0.7", "--D", "1", "--D", "3", "--ell-max", "2"],
        ["--potential", "pseudoharmonic", "--kappa", "4", "--re", "1", "--D", "2", "--ell-max", "1"],
        ["--potential", "kratzer", "--De", "0.5", "--r0", "2", "--D", "3", "--D", "5"],
    ],
)
def test_compare_agrees(args, capsys):
    code, out, _ = run(["compare", *args, "--n-max", "3"], capsys)
    assert code == 0
    rows = table(out)
    assert rows and all(r["status"] == "ok" for r in rows)
    assert max(float(r["rel_diff"]) for r in rows) <= 1e-8
    keys = [(int(r["n"]), int(r["ell"]), int(r["D"])) for r in rows]
    assert keys == sorted(keys)


def test_aim_mode_leaves_closed_blank(capsys):
    code, out, _ = run(["spectrum", "--mode", "aim", "--n-max", "1"], capsys)
    assert code == 0
    rows = table(out)
    assert rows[0]["E_closed"] == "" and float(rows[0]["E_aim"]) == pytest.approx(1.5)


def test_output_is_byte_identical(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert cli.main(["compare", "--potential", "kratzer", "--A", "2", "--B", "1", "--out", str(p)]) == 0
    a, b = (p.read_bytes() for p in paths)
    assert a == b
    assert b"\r" not in a
    header = [l for l in a.decode().splitlines() if not l.startswith("#")][0]
    assert header == ",".join(cli.SPECTRUM_COLUMNS)


def test_seventeen_significant_digits(capsys):
    _, out, _ = run(["spectrum", "--potential", "kratzer", "--n-max", "2"], capsys)
    assert table(out)[2]["E_closed"] == "-0.055555555555555552"


def test_json_output(capsys):
    code, out, _ = run(["compare", "--format", "json", "--n-max", "1"], capsys)
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"meta", "rows"}
    assert set(data["rows"][0]) == set(cli.SPECTRUM_COLUMNS)
    assert data["meta"]["potential"] == "oscillator"
    assert data["meta"]["mu"] == 1.0 and data["meta"]["hbar"] == 1.0


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"potential": "kratzer", "A": 2.0, "B": 0.0, "D": [3], "n_max": 1}))
    _, out, _ = run(["spectrum", "--config", str(cfg)], capsys)
    assert float(table(out)[0]["E_closed"]) == pytest.approx(-2.0)
    _, out, _ = run(["spectrum", "--config", str(cfg), "--A", "1"], capsys)
    assert float(table(out)[0]["E_closed"]) == pytest.approx(-0.5)


@pytest.mark.parametrize(
    "argv",
    [
        ["spectrum", "--potential", "morse"],
        ["spectrum", "--mu", "-1"],
        ["spectrum", "--n-max", "-1"],
        ["spectrum", "--potential", "kratzer", "--A", "1", "--De", "1", "--r0", "1"],
        ["spectrum", "--potential", "kratzer", "--De", "1"],
        ["spectrum", "--potential", "kratzer", "--A", "-1"],
        ["compare", "--x0", "1.5"],  # zero of f0 for the default oscillator
        ["wavefunction", "--D", "2", "--D", "3"],
        ["verify", "--suite", "nope"],
        ["nonsense"],
    ],
)
def test_config_errors_exit_1(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 1
    assert "error" in err


def test_bad_config_file(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"potentail": "kratzer"}))
    code, _, err = run(["spectrum", "--config", str(cfg)], capsys)
    assert code == 1 and "potentail" in err
    code, _, _ = run(["spectrum", "--config", str(tmp_path / "missing.json")], capsys)
    assert code == 1


def test_explicit_expansion_point(capsys):
    code, out, _ = run(["compare", "--x0", "4.0", "--n-max", "2"], capsys)
    assert code == 0
    assert max(float(r["rel_diff"]) for r in table(out)) <= 1e-8


def test_nonconvergence_flags_row_and_exits_2(monkeypatch, capsys):
    real = cli.aim_energies

    def flaky(spec, ns, **kw):
        if 2 in ns:
            raise AimConvergenceError(2, 0.0, 1.0, [])
        return real(spec, ns, **kw)

    monkeypatch.setattr(cli, "aim_energies", flaky)
    code, out, _ = run(["compare", "--n-max", "3"], capsys)
    assert code == 2
    status = {int(r["n"]): r["status"] for r in table(out)}
    assert status == {0: "ok", 1: "ok", 2: "no-convergence", 3: "ok"}


# wavefunction -----------------------------------------------------------


def test_wavefunction_oscillator_origin(capsys):
    code, out, _ = run(["wavefunction", "--potential", "oscillator", "--D", "3", "--points", "11"], capsys)
    assert code == 0
    meta = dict(l[2:].split("=", 1) for l in out.splitlines() if l.startswith("# "))
    C = float(meta["normalization"])
    assert C**2 == pytest.approx(4 / math.sqrt(math.pi))
    rows = table(out)
    assert float(rows[0]["r"]) == 0.0 and float(rows[0]["R"]) == pytest.approx(C)
    assert float(rows[0]["V"]) == 0.0


def test_wavefunction_kratzer_vanishes_at_origin(capsys):
    code, out, _ = run(
        ["wavefunction", "--potential", "kratzer", "--A", "1", "--B", "1", "--D", "3", "--n", "1"], capsys
    )
    assert code == 0
    rows = table(out)
    assert float(rows[0]["R"]) == 0.0
    assert rows[0]["V"] == ""  # singular there


@pytest.mark.parametrize(
    "args",
    [
        ["--potential", "oscillator", "--D", "3", "--n", "2", "--ell", "1"],
        ["--potential", "pseudoharmonic", "--kappa", "4", "--re", "1", "--D", "2", "--n", "3"],
        ["--potential", "kratzer", "--A", "2", "--B", "0.5", "--D", "5", "--n", "1", "--ell", "2"],
    ],
)
def test_sampled_grid_is_normalized(args, capsys):
    code, out, _ = run(["wavefunction", *args, "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    D = data["meta"]["D"][0]
    r = np.array([row["r"] for row in data["rows"]])
    R = np.array([row["R"] for row in data["rows"]])
    assert np.trapezoid(R**2 * r ** (D - 1), r) == pytest.approx(1.0, abs=1e-3)


def test_wavefunction_with_aim_energy(capsys):
    code, out, _ = run(
        ["wavefunction", "--potential", "kratzer", "--A", "1.5", "--B", "0.3", "--n", "2", "--mode", "aim"],
        capsys,
    )
    assert code == 0
    meta = dict(l[2:].split("=", 1) for l in out.splitlines() if l.startswith("# "))
    assert float(meta["energy"]) < 0


# verify -----------------------------------------------------------------


def test_verify_suite_passes(capsys):
    code, out, _ = run(["verify", "--suite", "x0-invariance", "--suite", "jets"], capsys)
    assert code == 0
    rows = table(out)
    x0 = [r for r in rows if r["suite"] == "x0-invariance"][0]
    assert float(x0["observed"]) <= 1e-7
    assert all(r["passed"] == "true" for r in rows)


def test_verify_tight_tolerance_fails_with_exit_3(capsys):
    code, out, _ = run(["verify", "--suite", "specfun", "--suite", "quadrature", "--tolerance", "1e-14"], capsys)
    assert code == 3
    rows = table(out)
    failed = [r for r in rows if r["passed"] == "false"]
    assert failed
    assert all(float(r["threshold"]) == 1e-14 for r in rows if r["relation"] == "<=")
