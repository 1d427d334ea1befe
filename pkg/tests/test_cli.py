"""Command-line entry point: output formats and exit codes."""

import csv
import io
import json
import math

import numpy as np
import pytest
from scipy import stats

from gemdist import cli
from gemdist.errors import NonConvergenceError


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


class TestEval:
    def test_named_pdf_csv(self, capsys):
        code, out, _ = run(capsys, "eval", "--named", "gamma", "--params", "p=3,lambda=2",
                           "--function", "pdf", "--points", "0.5:2:0.5")
        assert code == 0
        r = rows(out)
        assert r[0] == ["x", "pdf"]
        xs = np.array([float(a) for a, _ in r[1:]])
        np.testing.assert_array_equal(xs, [0.5, 1.0, 1.5, 2.0])
        got = np.array([float(b) for _, b in r[1:]])
        np.testing.assert_allclose(got, stats.gamma(3, scale=0.5).pdf(xs), rtol=1e-14)

    def test_quantile_json(self, capsys):
        code, out, _ = run(capsys, "eval", "--named", "exponential", "--params", "lambda=2",
                           "--function", "quantile", "--q", "0.5,0.9", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["function"] == "quantile"
        np.testing.assert_allclose([r["quantile"] for r in payload["rows"]],
                                   [math.log(2) / 2, math.log(10) / 2], rtol=1e-15)

    def test_inline_model_with_fraction_exponent(self, capsys):
        spec = json.dumps({"variant": "I", "m": 0, "n": "2/1", "beta": 0.5})
        code, out, _ = run(capsys, "eval", "--model", spec, "--function", "cdf", "--points=-1,0,1")
        assert code == 0
        got = [float(b) for _, b in rows(out)[1:]]
        np.testing.assert_allclose(got, stats.norm.cdf([-1, 0, 1]), rtol=1e-14)

    def test_model_file_and_out(self, capsys, tmp_path):
        f = tmp_path / "model.json"
        f.write_text(json.dumps({"named": "weibull", "params": {"a": 1, "b": 2}}))
        dest = tmp_path / "out.csv"
        code, out, _ = run(capsys, "eval", "--model", str(f), "--function", "hazard",
                           "--points", "1,3", "--out", str(dest))
        assert code == 0 and out == ""
        got = [float(b) for _, b in rows(dest.read_text())[1:]]
        np.testing.assert_allclose(got, [2.0, 6.0], rtol=1e-12)

    def test_transformed_spec(self, capsys):
        spec = json.dumps({"variant": "I", "m": 0, "n": 2, "beta": 0.5,
                           "transform": {"kind": "power", "c": 2}})
        code, out, _ = run(capsys, "eval", "--model", spec, "--points", "1,2")
        assert code == 0
        got = [float(b) for _, b in rows(out)[1:]]
        np.testing.assert_allclose(got, stats.chi2(1).pdf([1, 2]), rtol=1e-13)
        code, _, err = run(capsys, "eval", "--model", spec, "--function", "hazard", "--points", "1")
        assert code == 2 and "transformed" in err

    def test_full_precision(self, capsys):
        _, out, _ = run(capsys, "eval", "--named", "exponential", "--params", "lambda=2",
                        "--function", "quantile", "--q", "0.5")
        assert rows(out)[1][1] == repr(math.log(2) / 2)


class TestMomentsSampleCatalog:
    def test_moments_json(self, capsys):
        code, out, _ = run(capsys, "moments", "--named", "maxwell", "--format", "json")
        assert code == 0
        p = json.loads(out)
        np.testing.assert_allclose(p["mean"], stats.maxwell.mean(), rtol=1e-14)
        np.testing.assert_allclose(p["variance"], stats.maxwell.var(), rtol=1e-13)
        np.testing.assert_allclose(p["mode"], [math.sqrt(2)], rtol=1e-15)
        assert set(p["raw_moments"]) == {"1", "2", "3", "4"}

    def test_bimodal_rows(self, capsys):
        spec = json.dumps({"variant": "III", "m": 2, "n": 2, "beta": 0.5, "a": 5, "b": 10})
        code, out, _ = run(capsys, "moments", "--model", spec, "--max-j", "2")
        assert code == 0
        r = dict()
        modes = [float(v) for k, v in rows(out)[1:] if k == "mode"]
        np.testing.assert_allclose(sorted(modes), [5.0 - 10 * math.sqrt(2), 5.0 + 10 * math.sqrt(2)], rtol=1e-14)
        for k, v in rows(out)[1:]:
            r[k] = v
        assert "raw_moment_2" in r and "raw_moment_3" not in r

    def test_sample_reproducible(self, capsys):
        args = ("sample", "--named", "rayleigh", "--params", "sigma=2", "--count", "5", "--seed", "9")
        _, a, _ = run(capsys, *args)
        _, b, _ = run(capsys, *args)
        assert a == b and len(rows(a)) == 6

    def test_catalog(self, capsys):
        code, out, _ = run(capsys, "catalog")
        assert code == 0 and len(rows(out)) == 19
        code, out, _ = run(capsys, "catalog", "--named", "chi_square", "--params", "nu=4",
                           "--format", "json")
        assert code == 0 and json.loads(out)["model"]["variant"] == "II"


class TestFit:
    def test_gem2(self, capsys, tmp_path):
        x = np.random.default_rng(1).gamma(2.0, 1.0, 300)
        f = tmp_path / "data.txt"
        f.write_text("value\n" + "\n".join(repr(float(v)) for v in x))
        code, out, _ = run(capsys, "fit", str(f))
        assert code == 0
        p = json.loads(out)
        assert p["converged"] and p["params"]["variant"] == "II"

    def test_regression(self, capsys, tmp_path):
        x = np.linspace(0.3, 5, 20)
        y = 2 * x * np.exp(-0.8 * x ** 1.5)
        f = tmp_path / "pairs.csv"
        f.write_text("x,y\n" + "\n".join(f"{float(a)!r},{float(b)!r}" for a, b in zip(x, y)))
        code, out, _ = run(capsys, "fit", str(f), "--method", "regression")
        assert code == 0
        np.testing.assert_allclose(json.loads(out)["params"]["n"], 1.5, rtol=1e-4)

    def test_degenerate_sample_exit_4(self, capsys, tmp_path):
        f = tmp_path / "flat.txt"
        f.write_text("3\n3\n3\n3\n")
        code, _, err = run(capsys, "fit", str(f))
        assert code == 4 and "DegenerateSample" in err

    def test_unfinished_fit_exit_3(self, capsys, tmp_path, monkeypatch):
        from gemdist.estimation import FitResult
        from gemdist.model import GemModel

        stub = FitResult(GemModel("II", 1.0, 1.0, 1.0), -1.0, 5, False, (), "grid_fallback")
        monkeypatch.setattr(cli, "fit_gem2_mle", lambda *a, **k: stub)
        f = tmp_path / "d.txt"
        f.write_text("1\n2\n3\n")
        code, out, err = run(capsys, "fit", str(f))
        assert code == 3 and json.loads(out)["converged"] is False and "grid_fallback" in err


class TestErrors:
    def test_parity_violation_exit_2(self, capsys):
        spec = json.dumps({"variant": "I", "m": 1, "n": 2, "beta": 1})
        code, _, err = run(capsys, "eval", "--model", spec, "--points", "1")
        assert code == 2 and err

    @pytest.mark.parametrize("argv", [
        ["eval", "--named", "gamma", "--params", "p=2", "--points", "1"],
        ["eval", "--named", "gamma", "--params", "p=x,lambda=1", "--points", "1"],
        ["eval", "--named", "exponential", "--params", "lambda=1"],
        ["eval", "--named", "exponential", "--params", "lambda=1", "--points", "2:1:0.5"],
        ["eval", "--model", "{not json", "--points", "1"],
        ["eval", "--model", "/nonexistent/model.json", "--points", "1"],
        ["eval", "--points", "1"],
        ["eval", "--named", "exponential", "--params", "lambda=1", "--function", "quantile",
         "--q", "1.5"],
        ["fit", "/nonexistent/data.txt"],
        ["nosuchcommand"],
    ])
    def test_usage_errors_exit_2(self, capsys, argv):
        code, _, _ = run(capsys, *argv)
        assert code == 2

    def test_non_convergence_exit_3_names_operation(self, capsys, monkeypatch):
        def boom(*a, **k):
            raise NonConvergenceError("budget exhausted", operation="quantile")

        monkeypatch.setattr(cli.cdf_mod, "quantile", boom)
        code, _, err = run(capsys, "eval", "--named", "gamma", "--params", "p=2,lambda=1",
                           "--function", "quantile", "--q", "0.5")
        assert code == 3 and "quantile" in err

    def test_points_grid_inclusive(self):
        assert cli._parse_points("0:1:0.1")[-1] == pytest.approx(1.0)
        assert len(cli._parse_points("0:1:0.1")) == 11
        assert cli._parse_points("1, 2,3") == [1.0, 2.0, 3.0]
