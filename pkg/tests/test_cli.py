import json
import math

import pytest

from greedfear.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestDistEval:
    def test_laplace_cdf_at_zero(self, capsys):
        code, out, _ = _run(
            capsys,
            "dist", "eval",
            "--spec", '{"family":"laplace","m":0,"b":1}',
            "--what", "cdf", "--x", "0",
        )
        assert code == 0
        assert json.loads(out) == {"value": 0.5}

    def test_quantile(self, capsys):
        code, out, _ = _run(
            capsys,
            "dist", "eval",
            "--spec", '{"family":"logistic","m":1.5,"rho":0.4}',
            "--what", "quantile", "--u", "0.5",
        )
        assert code == 0
        assert json.loads(out)["value"] == pytest.approx(1.5, abs=1e-10)

    def test_cf_emits_components(self, capsys):
        code, out, _ = _run(
            capsys,
            "dist", "eval",
            "--spec", '{"family":"laplace","m":0,"b":1}',
            "--what", "cf", "--theta", "1",
        )
        assert code == 0
        data = json.loads(out)
        assert data["re"] == pytest.approx(0.5, abs=1e-10)
        assert data["im"] == pytest.approx(0.0, abs=1e-12)

    def test_moments_with_undefined_entries(self, capsys):
        code, out, _ = _run(
            capsys,
            "dist", "eval",
            "--spec", '{"family":"cauchy","c":1.0}',
            "--what", "moments",
        )
        assert code == 0
        data = json.loads(out)
        assert data["mean"] is None and data["variance"] is None

    def test_is_id(self, capsys):
        code, out, _ = _run(
            capsys,
            "dist", "eval",
            "--spec", '{"family":"uniform","lo":0,"hi":1}',
            "--what", "is-id",
        )
        assert code == 0
        assert json.loads(out) == {"value": False}

    def test_domain_error_exits_two(self, capsys):
        code, out, err = _run(
            capsys,
            "dist", "eval",
            "--spec", '{"family":"laplace","m":0,"b":1}',
            "--what", "quantile", "--u", "1.5",
        )
        assert code == 2
        assert "error" in json.loads(out)
        assert err.strip()

    def test_bad_json_exits_one(self, capsys):
        code, _, err = _run(
            capsys,
            "dist", "eval", "--spec", "not json", "--what", "cdf", "--x", "0",
        )
        assert code == 1
        assert "error" in err

    def test_missing_argument_exits_one(self, capsys):
        code, _, err = _run(
            capsys,
            "dist", "eval",
            "--spec", '{"family":"laplace","m":0,"b":1}',
            "--what", "cdf",
        )
        assert code == 1
        assert "--x" in err

    def test_unknown_flag_rejected(self, capsys):
        code, _, err = _run(
            capsys,
            "dist", "eval",
            "--spec", '{"family":"laplace","m":0,"b":1}',
            "--what", "cdf", "--x", "0", "--bogus", "1",
        )
        assert code == 1


class TestTransform:
    def test_wpf_eval(self, capsys):
        code, out, _ = _run(
            capsys,
            "transform", "eval",
            "--wpf", '{"kind":"tk","gamma":0.5}', "--u", "0.5",
        )
        assert code == 0
        assert json.loads(out)["value"] == pytest.approx(0.353553390593, abs=1e-10)

    def test_vf_eval(self, capsys):
        code, out, _ = _run(
            capsys,
            "transform", "eval",
            "--vf", '{"kind":"tk","alpha":0.88,"beta":0.88,"lam":2.25}',
            "--x", "1.0",
        )
        assert code == 0
        assert json.loads(out)["value"] == pytest.approx(1.0, abs=1e-12)

    def test_both_flags_rejected(self, capsys):
        code, _, err = _run(
            capsys,
            "transform", "eval",
            "--wpf", '{"kind":"tk","gamma":0.5}',
            "--vf", '{"kind":"tk","alpha":0.88,"beta":0.88,"lam":2.25}',
            "--u", "0.5",
        )
        assert code == 1
        assert "exactly one" in err

    def test_table_shape(self, capsys):
        code, out, _ = _run(
            capsys,
            "transform", "table",
            "--wpf", '{"kind":"tk","gamma":0.5}', "--points", "5",
        )
        assert code == 0
        lines = out.split("\n")
        assert lines[0] == "u,w"
        assert len([ln for ln in lines if ln]) == 6
        assert out.endswith("\n")

    def test_identity_table_columns_equal(self, capsys):
        # Prelec with rho = 1, delta = 1 is the identity weighting
        code, out, _ = _run(
            capsys,
            "transform", "table",
            "--wpf", '{"kind":"prelec","delta":1.0,"rho":1.0}', "--points", "9",
        )
        assert code == 0
        for line in out.strip().split("\n")[1:]:
            u, w = (float(c) for c in line.split(","))
            assert w == pytest.approx(u, abs=1e-10)

    def test_prelec_fixed_point(self, capsys):
        code, out, _ = _run(
            capsys,
            "transform", "table",
            "--wpf", '{"kind":"prelec","delta":1.0,"rho":0.5}', "--points", "99",
        )
        assert code == 0
        rows = [
            tuple(float(c) for c in line.split(","))
            for line in out.strip().split("\n")[1:]
        ]
        u_star = 1.0 / math.e
        u, w = min(rows, key=lambda row: abs(row[0] - u_star))
        # w(1/e) = 1/e for every Prelec weighting; nearest grid point is close
        assert abs(w - u_star) < abs(u - u_star) + 1e-3

    def test_table_json_round_trip(self, capsys):
        code, out, _ = _run(
            capsys,
            "transform", "table",
            "--wpf", '{"kind":"tk","gamma":0.61}', "--points", "7",
            "--out", "json",
        )
        assert code == 0
        data = json.loads(out)
        assert len(data["u"]) == len(data["w"]) == 7

    def test_zero_points_rejected(self, capsys):
        code, _, err = _run(
            capsys,
            "transform", "table",
            "--wpf", '{"kind":"tk","gamma":0.5}', "--points", "0",
        )
        assert code == 1


class TestPosterior:
    def test_uniform_tk_stats(self, capsys):
        code, out, _ = _run(
            capsys,
            "posterior", "stats",
            "--wpf", '{"kind":"tk","gamma":0.5}',
            "--prior", '{"family":"uniform","lo":-1,"hi":1}',
        )
        assert code == 0
        data = json.loads(out)
        assert data["mean"] == pytest.approx(0.24645, abs=5e-4)
        assert data["information_ratio"] == pytest.approx(0.320381, abs=1e-3)


class TestPrice:
    def test_levy_logistic(self, capsys):
        code, out, _ = _run(
            capsys,
            "price", "levy-logistic",
            "--s0", "100", "--r", "0.03", "--m", "0.05", "--rho", "0.15",
            "--k", "100", "--t", "1",
        )
        assert code == 0
        data = json.loads(out)
        assert data["h_q"] == pytest.approx(-0.768895894745896, abs=1e-9)
        assert 0 < data["price"] < 100
        assert abs(data["diagnostics"]["residual"]) < 1e-10

    def test_levy_logistic_bad_rho_exits_two(self, capsys):
        code, out, err = _run(
            capsys,
            "price", "levy-logistic",
            "--s0", "100", "--r", "0.03", "--m", "0.05", "--rho", "0.6",
            "--k", "100", "--t", "1",
        )
        assert code == 2
        assert "error" in json.loads(out)

    def test_levy_neggumbel_put(self, capsys):
        code, out, _ = _run(
            capsys,
            "price", "levy-neggumbel",
            "--s0", "100", "--r", "0.03", "--mu", "0.1", "--rho", "0.5",
            "--k", "100", "--t", "1", "--payoff", "put",
        )
        assert code == 0
        data = json.loads(out)
        assert data["price"] > 0
        assert data["mu_q"] == pytest.approx(0.03 + 0.120782237635, abs=1e-9)

    def test_greedfear_bs(self, capsys):
        code, out, _ = _run(
            capsys,
            "price", "greedfear-bs",
            "--s", "100", "--k", "100", "--t", "1", "--r", "0.05",
            "--sigma", "0.2", "--mu", "0.10", "--g", "0",
        )
        assert code == 0
        data = json.loads(out)
        assert data["price"] == pytest.approx(10.4505835722, abs=1e-6)
        assert data["coefficients"]["div_yield"] == pytest.approx(0.0, abs=1e-12)

    def test_greedfear_mc_reports_std_error(self, capsys):
        code, out, _ = _run(
            capsys,
            "price", "greedfear-mc",
            "--s", "100", "--k", "100", "--t", "1", "--r", "0.05",
            "--sigma", "0.2", "--mu", "0.10", "--g", "0.1",
            "--paths", "20000", "--steps", "25", "--seed", "3",
        )
        assert code == 0
        data = json.loads(out)
        assert data["std_error"] > 0
        ref = 10.0  # rough sanity band only
        assert abs(data["price"] - ref) < 3.0

    def test_binomial_example(self, capsys):
        code, out, _ = _run(
            capsys,
            "price", "binomial",
            "--s0", "100", "--k", "100", "--mu", "0.10", "--r", "0.05",
            "--sigma", "0.2", "--t", "1", "--a", "0", "--n", "2000",
        )
        assert code == 0
        data = json.loads(out)
        assert data["price"] == pytest.approx(10.45, abs=0.02)
        assert data["n"] == 2000
        assert data["dy_implied_by_A"] == pytest.approx(0.0, abs=1e-12)
        lo, hi = data["probability_bounds"]
        assert 0.0 < lo < hi < 1.0

    def test_binomial_coarse_tree_exits_two(self, capsys):
        code, out, _ = _run(
            capsys,
            "price", "binomial",
            "--s0", "100", "--k", "100", "--mu", "0.10", "--r", "0.05",
            "--sigma", "0.2", "--t", "1", "--a", "20", "--n", "1",
        )
        assert code == 2
        assert "error" in json.loads(out)


class TestCalibrate:
    def test_missing_file_exits_one(self, capsys):
        code, _, err = _run(
            capsys,
            "calibrate", "--quotes", "missing.csv", "--s0", "100", "--r", "0.05",
        )
        assert code == 1
        assert "file not found" in err

    def test_round_trip(self, capsys, tmp_path):
        from greedfear.binomial import price_closed_form_dividend

        rows = ["strike,maturity,mid_price"]
        for K in (90.0, 100.0, 110.0):
            for T in (0.5, 1.0):
                p = price_closed_form_dividend(100.0, K, 0.0, T, 0.05, 0.2, 0.025)
                rows.append(f"{K},{T},{p:.12f}")
        path = tmp_path / "quotes.csv"
        path.write_text("\n".join(rows) + "\n")
        code, out, _ = _run(
            capsys, "calibrate", "--quotes", str(path), "--s0", "100", "--r", "0.05"
        )
        assert code == 0
        data = json.loads(out)
        assert data["sigma_impl"] == pytest.approx(0.2, abs=1e-3)
        assert data["dy_impl"] == pytest.approx(0.025, abs=1e-3)
        assert data["converged"]

    def test_bad_quotes_exit_two(self, capsys, tmp_path):
        path = tmp_path / "quotes.csv"
        path.write_text("strike,maturity,mid_price\n100,1.0,-5\n")
        code, out, _ = _run(
            capsys, "calibrate", "--quotes", str(path), "--s0", "100", "--r", "0.05"
        )
        assert code == 2
        assert "error" in json.loads(out)
