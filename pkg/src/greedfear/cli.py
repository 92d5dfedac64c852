"""Batch command-line interface: distribution queries, transform tables,
pricing and calibration with JSON/CSV output.

Exit codes: 0 success, 1 usage error, 2 numeric/model error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

import numpy as np

from . import binomial as bn
from . import calibration as cal
from . import diffusion as df
from . import distributions as dist
from . import levy as lv
from . import transforms as tr
from .numerics import DomainError, NumericsError


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits 2 by default; we want 1
        raise _UsageError(message)


def _fmt(x: float) -> float:
    return float(f"{x:.12g}")


def emit_table(rows: Sequence[Sequence[float]], header: Sequence[str]) -> str:
    """CSV text with a header row and 12-significant-digit values."""
    if not rows:
        raise _UsageError("empty table")
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(f"{v:.12g}" for v in row))
    return "\n".join(lines) + "\n"


def _json_arg(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _UsageError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise _UsageError("JSON argument must be an object")
    return obj


def _build_parser() -> _Parser:
    p = _Parser(prog="greedfear", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dist", help="distribution queries")
    dsub = d.add_subparsers(dest="dist_command", required=True)
    de = dsub.add_parser("eval")
    de.add_argument("--spec", required=True, help="JSON distribution spec")
    de.add_argument(
        "--what",
        required=True,
        choices=["pdf", "cdf", "quantile", "cf", "mgf", "moments", "is-id"],
    )
    de.add_argument("--x", type=float)
    de.add_argument("--u", type=float)
    de.add_argument("--theta", type=float)
    de.add_argument("--s", type=float)

    t = sub.add_parser("transform", help="value/weighting function evaluation")
    tsub = t.add_subparsers(dest="transform_command", required=True)
    te = tsub.add_parser("eval")
    te.add_argument("--wpf", help="JSON weighting function")
    te.add_argument("--vf", help="JSON value function")
    te.add_argument("--u", type=float)
    te.add_argument("--x", type=float)
    tt = tsub.add_parser("table")
    tt.add_argument("--wpf", required=True)
    tt.add_argument("--points", type=int, default=99)
    tt.add_argument("--out", choices=["csv", "json"], default="csv")

    ps = sub.add_parser("posterior", help="posterior statistics")
    pssub = ps.add_subparsers(dest="posterior_command", required=True)
    pst = pssub.add_parser("stats")
    pst.add_argument("--wpf", required=True)
    pst.add_argument("--prior", required=True)
    pst.add_argument("--lo", type=float, default=-20.0)
    pst.add_argument("--hi", type=float, default=20.0)

    pr = sub.add_parser("price", help="option pricing")
    prsub = pr.add_subparsers(dest="price_command", required=True)

    pl = prsub.add_parser("levy-logistic")
    pl.add_argument("--s0", type=float, required=True)
    pl.add_argument("--r", type=float, required=True)
    pl.add_argument("--m", type=float, required=True)
    pl.add_argument("--rho", type=float, required=True)
    pl.add_argument("--k", type=float, required=True)
    pl.add_argument("--t", type=float, required=True)

    pn = prsub.add_parser("levy-neggumbel")
    pn.add_argument("--s0", type=float, required=True)
    pn.add_argument("--r", type=float, required=True)
    pn.add_argument("--mu", type=float, required=True)
    pn.add_argument("--rho", type=float, required=True)
    pn.add_argument("--k", type=float, required=True)
    pn.add_argument("--t", type=float, required=True)
    pn.add_argument("--payoff", choices=["call", "put"], default="call")

    pb = prsub.add_parser("greedfear-bs")
    for flag in ("--s", "--k", "--t", "--r", "--sigma", "--mu", "--g"):
        pb.add_argument(flag, type=float, required=True)

    pm = prsub.add_parser("greedfear-mc")
    for flag in ("--s", "--k", "--t", "--r", "--sigma", "--mu", "--g"):
        pm.add_argument(flag, type=float, required=True)
    pm.add_argument("--paths", type=int, default=100_000)
    pm.add_argument("--steps", type=int, default=100)
    pm.add_argument("--seed", type=int, default=0)

    pbin = prsub.add_parser("binomial")
    for flag in ("--s0", "--k", "--mu", "--r", "--sigma", "--t", "--a"):
        pbin.add_argument(flag, type=float, required=True)
    pbin.add_argument("--n", type=int, required=True)

    c = sub.add_parser("calibrate", help="implied (sigma, D_y) from quotes")
    c.add_argument("--quotes", required=True)
    c.add_argument("--s0", type=float, required=True)
    c.add_argument("--r", type=float, required=True)
    c.add_argument("--model", choices=["bs-dy"], default="bs-dy")
    return p


def _require(args, name: str) -> float:
    v = getattr(args, name, None)
    if v is None:
        raise _UsageError(f"--{name} is required for this query")
    return v


def _dist_eval(args) -> dict:
    spec = dist.from_json(_json_arg(args.spec))
    what = args.what
    if what == "pdf":
        return {"value": _fmt(spec.pdf(_require(args, "x")))}
    if what == "cdf":
        return {"value": _fmt(spec.cdf(_require(args, "x")))}
    if what == "quantile":
        return {"value": _fmt(spec.quantile(_require(args, "u")))}
    if what == "cf":
        v = spec.cf(_require(args, "theta"))
        return {"re": _fmt(v.real), "im": _fmt(v.imag)}
    if what == "mgf":
        return {"value": _fmt(spec.mgf(_require(args, "s")))}
    if what == "is-id":
        return {"value": spec.is_infinitely_divisible()}
    m = spec.moments()
    return {
        k: (None if v is None else _fmt(v))
        for k, v in (
            ("mean", m.mean),
            ("variance", m.variance),
            ("skewness", m.skewness),
            ("excess_kurtosis", m.excess_kurtosis),
        )
    }


def _transform_eval(args) -> dict:
    if (args.wpf is None) == (args.vf is None):
        raise _UsageError("provide exactly one of --wpf / --vf")
    if args.wpf is not None:
        w = tr.wpf_from_json(_json_arg(args.wpf))
        return {"value": _fmt(tr.eval_wpf(w, _require(args, "u")))}
    vf = tr.value_function_from_json(_json_arg(args.vf))
    return {"value": _fmt(tr.eval_value_function(vf, _require(args, "x")))}


def _transform_table(args) -> str | dict:
    if args.points < 1:
        raise _UsageError("--points must be >= 1")
    w = tr.wpf_from_json(_json_arg(args.wpf))
    us = np.linspace(0.0, 1.0, args.points + 2)[1:-1]
    rows = [(float(u), tr.eval_wpf(w, float(u))) for u in us]
    if args.out == "json":
        return {"u": [_fmt(u) for u, _ in rows], "w": [_fmt(v) for _, v in rows]}
    return emit_table(rows, ("u", "w"))


def _posterior_stats(args) -> dict:
    w = tr.wpf_from_json(_json_arg(args.wpf))
    prior = dist.from_json(_json_arg(args.prior))
    pen = tr.penalized_cdf(w, prior)
    stats = tr.posterior_stats(pen, (args.lo, args.hi))
    return {
        "mean": _fmt(stats.mean),
        "variance": _fmt(stats.variance),
        "std": _fmt(stats.std),
        "information_ratio": _fmt(stats.information_ratio),
    }


def _price(args) -> dict:
    cmd = args.price_command
    if cmd == "levy-logistic":
        mk = lv.LevyMarket(lv.LogisticLevy(args.m, args.rho), args.s0, args.r)
        sol = lv.solve_martingale_h(mk)
        price = lv.price_call_logistic(mk, args.k, args.t)
        return {
            "price": _fmt(price),
            "h_q": _fmt(sol.h_q),
            "diagnostics": {"residual": sol.residual, "domain": list(sol.domain)},
        }
    if cmd == "levy-neggumbel":
        mk = lv.LevyMarket(lv.NegGumbelLevy(args.mu, args.rho), args.s0, args.r)
        payoff = lv.Call(args.k) if args.payoff == "call" else lv.Put(args.k)
        price = lv.price_ecc_neggumbel(mk, lv.EuropeanClaim(payoff, args.t))
        return {
            "price": _fmt(price),
            "mu_q": _fmt(lv.neggumbel_rn_location(args.r, args.rho)),
        }
    if cmd == "greedfear-bs":
        price = df.price_call_closed_form(
            args.s, args.k, 0.0, args.t, args.r, args.sigma, args.mu, args.g
        )
        spec = df.constant_diffusion_spec(args.mu, args.sigma, args.r, args.g)
        co = df.derived_coefficients(spec, 0.0, args.s)
        return {"price": _fmt(price), "coefficients": _coeff_json(co)}
    if cmd == "greedfear-mc":
        spec = df.constant_diffusion_spec(args.mu, args.sigma, args.r, args.g)
        k = args.k
        price, se = df.price_fk_monte_carlo(
            spec,
            lambda s: np.maximum(s - k, 0.0),
            0.0,
            args.s,
            args.t,
            df.MonteCarloSettings(args.paths, args.steps, args.seed),
        )
        co = df.derived_coefficients(spec, 0.0, args.s)
        return {"price": _fmt(price), "std_error": _fmt(se), "coefficients": _coeff_json(co)}
    spec = bn.GreedFearBinomialSpec(
        args.s0, args.mu, args.sigma, args.r, args.a, args.n, args.t
    )
    k = args.k
    price = bn.price_binomial(spec, lambda s: np.maximum(s - k, 0.0))
    sq = np.sqrt(spec.dt)
    return {
        "price": _fmt(price),
        "n": spec.n_steps,
        "dy_implied_by_A": _fmt(spec.div_yield),
        "probability_bounds": [
            _fmt(0.5 - 0.5 * spec.sharpe_invest * sq),
            _fmt(0.5 + 0.5 * spec.sharpe_invest * sq),
        ],
    }


def _coeff_json(co: df.DerivedCoefficients) -> dict:
    return {
        "r_invest": _fmt(co.r_invest),
        "sharpe": _fmt(co.sharpe),
        "sharpe_tau": _fmt(co.sharpe_tau),
        "div_yield": _fmt(co.div_yield),
        "drift_R": _fmt(co.drift_R),
        "reward_h": _fmt(co.reward_h),
    }


def _calibrate(args) -> dict:
    quotes = cal.load_quotes(args.quotes)
    res = cal.calibrate_sigma_dy(quotes, args.s0, args.r)
    return {
        "sigma_impl": _fmt(res.sigma_impl),
        "dy_impl": _fmt(res.dy_impl),
        "objective": res.objective,
        "n_iterations": res.n_iterations,
        "converged": res.converged,
    }


def run(argv: Sequence[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
        if args.command == "dist":
            result = _dist_eval(args)
        elif args.command == "transform":
            if args.transform_command == "eval":
                result = _transform_eval(args)
            else:
                result = _transform_table(args)
        elif args.command == "posterior":
            result = _posterior_stats(args)
        elif args.command == "price":
            result = _price(args)
        else:
            result = _calibrate(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except cal.QuoteError as exc:
        if "cannot open" in str(exc):
            print(f"error: file not found: {exc}", file=sys.stderr)
            return 1
        print(json.dumps({"error": str(exc)}))
        return 2
    except (DomainError, NumericsError, lv.ModelError, bn.TreeConfigError, ValueError) as exc:
        print(json.dumps({"error": str(exc)}))
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if isinstance(result, str):
        sys.stdout.write(result)
    else:
        print(json.dumps(result))
    return 0


def main(argv: Optional[Sequence[str]] = None) -> None:
    raise SystemExit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
