import csv
import io
import json
from fractions import Fraction

import pytest

from hus_lab import cli
from hus_lab.polyalg import BoundCheck


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def csv_rows(text):
    return list(csv.DictReader(line for line in io.StringIO(text) if not line.startswith("#")))


# --- constant -----------------------------------------------------------------------


def test_constant_bernstein_schurer(capsys):
    data = run_json(capsys, "constant", "--operator", "bernstein-schurer", "-n", "2", "-p", "1")
    assert data["K_exact"] == "5/1"
    assert data["config"]["seed"] == 0 and data["config"]["trials"] == 1000
    assert data["config"]["norm"] == "interval"


def test_constant_lorentz_unstable(capsys):
    assert run_json(capsys, "constant", "--operator", "lorentz", "-n", "4")["status"] == "unstable"


def test_constant_invalid_stancu(capsys):
    code, _, err = run(capsys, "constant", "--operator", "stancu", "-n", "2", "-a", "1", "-b", "0")
    assert code == 2 and "domain error" in err


def test_constant_csv(capsys):
    code, out, _ = run(capsys, "constant", "--operator", "kantorovich-schurer", "-n", "2", "-p", "1",
                       "--format", "csv")
    assert code == 0
    (row,) = csv_rows(out)
    assert (row["K_num"], row["K_den"]) == ("15", "4")


def test_constant_disk_is_labelled(capsys):
    data = run_json(capsys, "constant", "--operator", "bernstein-schurer", "-n", "2", "-p", "1",
                    "--norm", "disk", "--radius", "1.5")
    assert data["config"]["radius"] == 1.5
    assert any(note.startswith("exploratory") for note in data["notes"])


# --- usage errors -------------------------------------------------------------------------


def exit_code(argv):
    try:
        return cli.main(argv)
    except SystemExit as exc:
        return exc.code


@pytest.mark.parametrize(
    "argv",
    [
        ["constant", "--operator", "bernstein", "-n", "two"],
        ["frobnicate"],
        ["constant", "--operator", "bernstein", "--norm", "l2"],
        ["constant", "-n", "2"],
        [],
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    assert exit_code(argv) == 1


def test_unknown_operator_is_domain_error(capsys):
    assert run(capsys, "constant", "--operator", "nope", "-n", "2")[0] == 2


# --- sweep --------------------------------------------------------------------------------


def test_sweep_rows(capsys):
    code, out, _ = run(capsys, "sweep", "--operator", "bernstein-schurer", "--n-range", "1..3", "--p-range", "0..1")
    assert code == 0
    rows = csv_rows(out)
    assert [(int(r["n"]), int(r["p"])) for r in rows] == [(n, p) for n in (1, 2, 3) for p in (0, 1)]
    row = next(r for r in rows if r["n"] == "2" and r["p"] == "1")
    assert Fraction(int(row["K_num"]), int(row["K_den"])) == 5
    assert out.startswith("# ") and "seed=0" in out


def test_sweep_single_point(capsys):
    code, out, _ = run(capsys, "sweep", "--operator", "bernstein-schurer", "--n-range", "4", "--p-range", "2")
    assert code == 0 and len(csv_rows(out)) == 1


def test_sweep_kantorovich_scaling(capsys):
    _, out, _ = run(capsys, "sweep", "--operator", "bernstein-schurer,kantorovich-schurer",
                    "--n-range", "1..4", "--p-range", "0..3")
    rows = csv_rows(out)
    k = {(r["operator"], int(r["n"]), int(r["p"])): Fraction(int(r["K_num"]), int(r["K_den"])) for r in rows}
    for n in range(1, 5):
        for p in range(4):
            assert k["kantorovich_schurer", n, p] == Fraction(n + 1, n + p + 1) * k["bernstein_schurer", n, p]
    assert [r["operator"] for r in rows] == sorted(r["operator"] for r in rows)


def test_sweep_deterministic(capsys, tmp_path):
    argv = ["sweep", "--operator", "kantorovich-schurer", "--n-range", "1..5", "--p-range", "0..2"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(argv + ["--format", "json", "--output", str(a)]) == 0
    assert cli.main(argv + ["--format", "json", "--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_sweep_empty_range(capsys):
    assert run(capsys, "sweep", "--operator", "bernstein", "--n-range", "3..1")[0] == 2


def test_sweep_bad_range(capsys):
    assert run(capsys, "sweep", "--operator", "bernstein", "--n-range", "x..y")[0] == 1


# --- lorentz-rep ------------------------------------------------------------------------


def write_poly(tmp_path, coeffs, name="p.json"):
    path = tmp_path / name
    path.write_text(json.dumps({"basis": "monomial", "coefficients": coeffs}))
    return str(path)


def test_lorentz_rep_chebyshev(capsys, tmp_path):
    data = run_json(capsys, "lorentz-rep", "--input", write_poly(tmp_path, ["1", "-8", "8"]), "--degree", "2")
    assert data["basis"] == "bernstein"
    assert [c["re"] for c in data["coefficients"]] == ["1/1", "-6/1", "1/1"]


def test_lorentz_rep_constant(capsys, tmp_path):
    data = run_json(capsys, "lorentz-rep", "--input", write_poly(tmp_path, [1]), "--degree", "1")
    assert [c["re"] for c in data["coefficients"]] == ["1/1", "1/1"]


def test_lorentz_rep_degree_too_small(capsys, tmp_path):
    path = write_poly(tmp_path, [0, 0, 0, 1])
    assert run(capsys, "lorentz-rep", "--input", path, "--degree", "2")[0] == 2


def test_lorentz_rep_malformed(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "lorentz-rep", "--input", str(bad))[0] == 1
    assert run(capsys, "lorentz-rep", "--input", str(tmp_path / "missing.json"))[0] == 1


# --- bound-check ------------------------------------------------------------------------


def test_bound_check_degree_12(capsys):
    data = run_json(capsys, "bound-check", "--degree", "12", "--trials", "10000", "--seed", "42")
    assert data["max_ratio"] <= 1 + 1e-9
    assert data["chebyshev_equality"] is True and data["passed"] is True


def test_bound_check_minimal(capsys):
    assert run_json(capsys, "bound-check", "--degree", "1", "--trials", "1")["passed"] is True


def test_bound_check_chebyshev_only(capsys):
    data = run_json(capsys, "bound-check", "--degree", "7", "--chebyshev-only")
    assert data["trials"] == 0
    assert data["chebyshev_ratio"] == pytest.approx(1.0, abs=1e-10)


def test_bound_check_bad_degree(capsys):
    assert run(capsys, "bound-check", "--degree", "0")[0] == 2


def test_bound_check_property_violation(capsys, monkeypatch):
    fake = BoundCheck(3, 10, 0, 1.5, 1.0, True, 1.0)
    monkeypatch.setattr(cli, "coefficient_bound_check", lambda *a, **k: fake)
    code, out, err = run(capsys, "bound-check", "--degree", "3", "--trials", "10")
    assert code == 3 and "property violation" in err
    assert json.loads(out)["passed"] is False


# --- apply / empirical / instability ------------------------------------------------------


def test_apply_lorentz(capsys):
    data = run_json(capsys, "apply", "--operator", "lorentz", "-n", "2", "--function", "taylor:[0,0,1]",
                    "--at", "1+0i")
    assert data["value_float"] == 0.5
    assert data["value"] == {"re": "1/2", "im": "0/1"}


def test_apply_complex_point(capsys):
    data = run_json(capsys, "apply", "--operator", "lorentz", "-n", "2", "--function", "taylor:[0,0,1]",
                    "--at", "0+1i")
    assert data["value"] == {"re": "-1/2", "im": "0/1"}


def test_apply_bernstein_grid(capsys):
    data = run_json(capsys, "apply", "--operator", "bernstein", "-n", "2", "--function", "e:1", "--at", "1/3")
    assert data["value"]["re"] == "1/3"


def test_apply_szasz(capsys):
    data = run_json(capsys, "apply", "--operator", "szasz", "-n", "3", "--function", "e:1", "--at", "0.4")
    assert data["value"] == pytest.approx(0.4, abs=1e-12)
    assert data["tail_bound"] <= 1e-12


def test_apply_beta_exact(capsys):
    data = run_json(capsys, "apply", "--operator", "beta", "-n", "4", "--function", "e:1", "--at", "1/2")
    assert data["value"]["re"] == "1/2"


def test_apply_function_file(capsys, tmp_path):
    path = tmp_path / "f.json"
    path.write_text(json.dumps({"variant": "poly", "coeffs": ["0", "1"]}))
    data = run_json(capsys, "apply", "--operator", "stancu", "-n", "3", "--function", str(path), "--at", "1/4")
    assert data["value"]["re"] == "1/4"


def test_apply_errors(capsys):
    assert run(capsys, "apply", "--operator", "bernstein", "--function", "taylor:[oops")[0] == 1
    assert run(capsys, "apply", "--operator", "beta", "--function", "e:1")[0] == 1
    assert run(capsys, "apply", "--operator", "beta", "--function", "e:1", "--at", "1+1i")[0] == 2


def test_empirical_certificate(capsys):
    data = run_json(capsys, "empirical", "--operator", "bernstein-schurer", "-n", "2", "-p", "1",
                    "--trials", "1000", "--seed", "7", "--certificate")
    assert data["empirical_lower_bound"] == pytest.approx(5.0, rel=1e-9)
    assert data["config"]["seed"] == 7


def test_seed_env_override(capsys, monkeypatch):
    argv = ["empirical", "--operator", "kantorovich-schurer", "-n", "2", "-p", "1", "--trials", "300"]
    monkeypatch.setenv("HUS_LAB_SEED", "11")
    env = run_json(capsys, *argv, "--seed", "3")
    flag = run_json(capsys, *argv, "--seed", "11")
    assert env["config"]["seed"] == 11
    assert env == flag
    monkeypatch.setenv("HUS_LAB_SEED", "eleven")
    assert run(capsys, *argv)[0] == 1


def test_instability_lorentz(capsys):
    data = run_json(capsys, "instability", "--operator", "lorentz", "-n", "5")
    assert data["max_finite_reciprocal"] == "625/24"


def test_instability_cited(capsys):
    assert run_json(capsys, "instability", "--operator", "beta", "-n", "3")["status"] == "unstable_cited"
    assert run(capsys, "instability", "--operator", "lorentz", "-n", "1")[0] == 2


def test_output_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "constant", "--operator", "bernstein", "-n", "3", "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["K_exact"] == "15/1"


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "hus_lab", "constant", "--operator", "bernstein", "-n", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["K_exact"] == "6/1"
