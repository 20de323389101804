import json

import numpy as np
import pandas as pd
import pytest

import main
from models.cases import truncated_landau
from models.domain import RadialGrid
from utils import reports
from utils.numerics import SampledFunction, quadrature


def read_csv(path):
    return pd.read_csv(path, comment="#")


def header(path, key):
    line = next(line for line in path.read_text().splitlines() if line.startswith("# {}: ".format(key)))
    return line[len("# {}: ".format(key)):]


def run(tmp_path, *argv, name="out.csv"):
    out = tmp_path / name
    code = main.main(list(argv) + ["--out", str(out)])
    return code, out


class TestSpectrum:

    def test_constant_field(self, tmp_path):
        code, out = run(tmp_path, "spectrum", "--case", "i", "--A0", "5", "--lambda", "7", "--relaxed")
        assert code == 0
        table = read_csv(out)
        np.testing.assert_allclose(table["epsilon"], [0, 9, 16, 21, 24])
        np.testing.assert_allclose(table["E_plus"], -table["E_minus"])
        assert "# non-physical" in out.read_text()

    def test_eckart(self, tmp_path):
        code, out = run(tmp_path, "spectrum", "--case", "ii", "--C1", "3", "--D1", "54")
        assert code == 0
        table = read_csv(out)
        assert len(table) == 5
        assert table["epsilon"].iloc[-1] == pytest.approx(224.4898, abs=1e-4)
        assert "# non-physical" not in out.read_text()

    def test_threshold_and_units(self, tmp_path):
        code, out = run(tmp_path, "spectrum", "--A0", "5", "--lambda", "11/2", "--show-threshold", "--physical")
        assert code == 0
        table = read_csv(out)
        assert len(table) == 6
        assert table["is_threshold"].tolist() == [False] * 5 + [True]
        assert table["E_plus_eV"].iloc[1] == pytest.approx(3 * 0.658, rel=1e-3)

    def test_no_bound_states(self, tmp_path, capsys):
        code, out = run(tmp_path, "spectrum", "--case", "i", "--A0", "-1", "--lambda", "1/2")
        assert code == 2
        assert "no bound states" in capsys.readouterr().err

    def test_json(self, tmp_path):
        code, out = run(tmp_path, "spectrum", "--A0", "5", "--lambda", "7", "--relaxed", "--format", "json",
                        name="out.json")
        assert code == 0
        document = json.loads(out.read_text())
        assert [row["epsilon"] for row in document["rows"]] == pytest.approx([0, 9, 16, 21, 24])
        assert document["non_physical"] is True
        assert document["config"]["A0"] == 5.0

    def test_stdout(self, capsys):
        assert main.main(["spectrum", "--A0", "5", "--lambda", "11/2"]) == 0
        assert capsys.readouterr().out.startswith("# hyperlandau")


def test_golden_header(tmp_path, monkeypatch):
    monkeypatch.setattr(reports, "VERSION", "0.0.0")
    code, out = run(tmp_path, "spectrum", "--case", "i", "--A0", "5", "--lambda", "7", "--relaxed")
    assert code == 0
    expected = [
        "# hyperlandau 0.0.0",
        '# config: {"A0": 5.0, "C1": null, "C2": null, "C3": null, "D1": null, "D2": null, "D3": null, '
        '"R": 1.0, "case": "i", "command": "spectrum", "lam": "7 (relaxed)", "lambda_prime": null, "n_points": null, '
        '"physical": false, "relaxed": true, "show_threshold": false, "table": null, "u_max": null, '
        '"u_min": null}',
        "# units: hbar=c=1; q=-e absorbed: alpha=(qR/c hbar)A, b=(qR^2/c hbar)B, f=Phi/phi0; "
        "epsilon=R^2 E^2; energies in 1/R",
        "# non-physical: lambda is not half-odd (relaxed mode)",
        "n,epsilon,E_plus,E_minus,is_threshold,degeneracy",
    ]
    assert out.read_text().splitlines()[:5] == expected


class TestUsage:

    @pytest.mark.parametrize("argv", [[],
                                      ["explode"],
                                      ["spectrum", "--A0", "abc"],
                                      ["spectrum", "--case", "v"],
                                      ["spectrum", "--case", "i"],
                                      ["spectrum", "--case", "tabulated"],
                                      ["spectrum", "--R", "0"],
                                      ["eigenfunction", "--A0", "5", "--n", "-1"]])
    def test_usage_errors(self, argv):
        assert main.main(argv) == 1

    def test_help(self, capsys):
        assert main.main(["spectrum", "--help"]) == 0
        assert "--show-threshold" in capsys.readouterr().out

    def test_strict_lambda(self, tmp_path):
        code, _ = run(tmp_path, "spectrum", "--A0", "5", "--lambda", "7")
        assert code == 2


class TestConfig:

    def write(self, tmp_path, text):
        path = tmp_path / "run.ini"
        path.write_text("[hyperlandau]\n" + text)
        return str(path)

    def test_values_from_file(self, tmp_path):
        config = self.write(tmp_path, "A0 = 5\nlam = '7'\nrelaxed = True\n")
        code, out = run(tmp_path, "spectrum", "--config", config)
        assert code == 0
        assert len(read_csv(out)) == 5

    def test_flags_override_file(self, tmp_path):
        config = self.write(tmp_path, "A0 = 5\nlam = '7'\nrelaxed = True\n")
        code, out = run(tmp_path, "spectrum", "--config", config, "--A0", "3")
        assert code == 0
        np.testing.assert_allclose(read_csv(out)["epsilon"], [0, 5, 8])

    def test_unknown_key(self, tmp_path):
        config = self.write(tmp_path, "A0 = 5\ncolour = 'red'\n")
        code, _ = run(tmp_path, "spectrum", "--config", config)
        assert code == 1

    def test_missing_file(self, tmp_path):
        code, _ = run(tmp_path, "spectrum", "--config", str(tmp_path / "missing.ini"))
        assert code == 1


class TestEigenfunction:

    def test_normalized_pair(self, tmp_path):
        code, out = run(tmp_path, "eigenfunction", "--A0", "5", "--lambda", "7", "--relaxed", "--n", "1",
                        "--samples", "500", "--u-max", "8", "--normalize")
        assert code == 0
        table = read_csv(out)
        assert list(table.columns) == ["u", "g1", "g2", "psi1_abs2_plus_psi2_abs2"]
        grid = RadialGrid(1e-3, 8.0, 500)
        total = quadrature(SampledFunction(grid, table["g1"] ** 2 + table["g2"] ** 2))
        assert total == pytest.approx(1.0, rel=1e-6)
        g1 = table["g1"][table["g1"].abs() > 1e-12]
        assert np.count_nonzero(np.diff(np.sign(g1))) == 1
        assert (table["g2"] >= 0).all() or (table["g2"] <= 0).all()

    def test_ground_state(self, tmp_path):
        code, out = run(tmp_path, "eigenfunction", "--case", "iii", "--C2", "5", "--n", "0", "--normalize")
        assert code == 0
        table = read_csv(out)
        assert (table["g2"] == 0).all()

    def test_level_out_of_range(self, tmp_path):
        code, _ = run(tmp_path, "eigenfunction", "--A0", "5", "--lambda", "7", "--relaxed", "--n", "5")
        assert code == 2


def test_field(tmp_path):
    code, out = run(tmp_path, "field", "--case", "ii", "--lambda-prime", "7/2", "--C1", "3", "--D1", "54",
                    "--u-min", "0.5", "--u-max", "4", "--n-points", "50")
    assert code == 0
    table = read_csv(out)
    u = table["u"].to_numpy()
    np.testing.assert_allclose(table["b"], -3 + 18 / np.tanh(u), rtol=1e-9)
    np.testing.assert_allclose(table["flux_circulation"] - table["flux_surface"], 0.5, atol=1e-9)


def test_field_needs_no_angular_momentum(tmp_path):
    code, out = run(tmp_path, "field", "--case", "ii", "--lambda-prime", "7", "--C1", "3", "--D1", "54")
    assert code == 0
    table = read_csv(out)
    u = table["u"].to_numpy()
    np.testing.assert_allclose(table["flux_circulation"], 7 - 3 * np.cosh(u) + 18 * np.sinh(u), rtol=1e-9)
    # f(0+) = lambda' - C1
    assert table["flux_circulation"].iloc[0] == pytest.approx(4.0, abs=0.02)
    config = json.loads(header(out, "config"))
    assert config["lambda_prime"] == 7.0
    assert config["lam"] is None
    assert "# non-physical" not in out.read_text()


class TestResolvedConfig:

    def test_defaulted_lambda(self, tmp_path):
        code, out = run(tmp_path, "spectrum", "--case", "ii", "--C1", "3", "--D1", "54")
        assert code == 0
        config = json.loads(header(out, "config"))
        assert config["lam"] == "1/2"
        assert config["lambda_prime"] == 0.5

    def test_defaulted_grid(self, tmp_path):
        code, out = run(tmp_path, "eigenfunction", "--case", "iii", "--C2", "5", "--n", "1")
        assert code == 0
        config = json.loads(header(out, "config"))
        assert (config["u_min"], config["u_max"], config["n_points"]) == (1e-3, 8.0, 500)
        assert config["D2"] == 0.0


class TestPotentials:

    def test_constant_field(self, tmp_path):
        code, out = run(tmp_path, "potentials", "--A0", "5", "--lambda", "7", "--relaxed",
                        "--u-max", "30", "--n-points", "3000")
        assert code == 0
        table = read_csv(out)
        assert list(table.columns) == ["u", "W", "V1", "V2"]
        assert table["V1"].iloc[-1] == pytest.approx(25.0, abs=1e-6)
        assert table["V2"].iloc[-1] == pytest.approx(25.0, abs=1e-6)
        assert table["W"].iloc[-1] == pytest.approx(5.0, abs=1e-6)
        assert float(header(out, "threshold")) == 25.0
        assert [float(e) for e in header(out, "levels").split()] == pytest.approx([0, 9, 16, 21, 24])

    def test_poschl_teller_well(self, tmp_path):
        code, out = run(tmp_path, "potentials", "--case", "iii", "--C2", "5", "--format", "json",
                        name="out.json")
        assert code == 0
        document = json.loads(out.read_text())
        assert document["rows"][0]["V1"] == pytest.approx(-5.0, abs=1e-3)
        assert document["header"]["closed_form"] is True

    def test_unsolvable_lambda(self, tmp_path):
        code, out = run(tmp_path, "potentials", "--case", "ii", "--lambda-prime", "1/2", "--lambda", "7/2",
                        "--C1", "3", "--D1", "54")
        assert code == 0
        assert header(out, "levels") == "none"
        table = read_csv(out)
        W = table["W"].to_numpy()
        assert np.all(np.isfinite(table["V1"])) and np.all(np.isfinite(W))


class TestZeroMode:

    def test_admissible(self, tmp_path):
        code, out = run(tmp_path, "zero-mode", "--A0", "5", "--lambda", "7", "--relaxed", "--normalize")
        assert code == 0
        text = out.read_text()
        assert "# zero_mode: admissible" in text
        assert "# origin_exponent: 2.0" in text

    def test_tabulated_no_go(self, tmp_path):
        case = truncated_landau(3.0, u0=2.0)
        table = tmp_path / "gauge.csv"
        pd.DataFrame({"u": case.u, "alpha": case.alpha}).to_csv(table, index=False)
        code, out = run(tmp_path, "zero-mode", "--case", "tabulated", "--table", str(table),
                        "--lambda", "7/2", "--u-max", "20", "--n-points", "200")
        assert code == 0
        text = out.read_text()
        assert "# zero_mode: fails_at_infinity" in text
        assert "# normalizable: False" in text
        line = next(line for line in text.splitlines() if line.startswith("# tail_exponent:"))
        assert float(line.split(":")[1]) == pytest.approx(0.5)


class TestVerify:

    def test_pass(self, tmp_path):
        code, out = run(tmp_path, "verify", "--A0", "5", "--lambda", "7", "--relaxed", name="report.json")
        assert code == 0
        report = json.loads(out.read_text())
        assert report["passed"] is True
        assert report["schema"] == reports.SCHEMA
        assert report["max_relative_deviation"] <= 1e-3

    def test_wrong_expectation(self, tmp_path):
        code, out = run(tmp_path, "verify", "--A0", "5", "--lambda", "7", "--relaxed",
                        "--expect", "0,10,16,21,24", name="report.json")
        assert code == 3
        assert json.loads(out.read_text())["passed"] is False


class TestSweep:

    def test_window(self, tmp_path):
        code, out = run(tmp_path, "sweep", "--A0", "5", "--two-lambda-max", "21", "--workers", "2")
        assert code == 0
        table = read_csv(out)
        assert table["two_lambda"].tolist() == [11, 13, 15, 17, 19, 21]
        assert (table["n_levels"] == 5).all()
        assert "# degeneracy: infinite: half-odd lambda >= 11/2" in out.read_text()

    def test_empty_window(self, tmp_path):
        code, out = run(tmp_path, "sweep", "--A0", "5", "--two-lambda-max", "9")
        assert code == 0
        assert len(read_csv(out)) == 0

    def test_relaxed(self, tmp_path):
        code, out = run(tmp_path, "sweep", "--A0", "5", "--two-lambda-min", "10", "--two-lambda-max", "14",
                        "--relaxed")
        assert code == 0
        table = read_csv(out)
        assert table["two_lambda"].tolist() == [10, 11, 12, 13, 14]
        assert table["non_physical"].tolist() == [True, False, True, False, True]
