"""Esscher-transform risk-neutral pricing for exponential Levy markets.

Two marginals are supported: the logistic Levy motion (priced through an
Esscher tilt whose parameter solves the martingale equation) and the
negative-Gumbel Levy motion (whose martingale condition has a closed-form
location shift).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Union

import numpy as np
from scipy.interpolate import CubicSpline

from .numerics import (
    DEFAULT_QUAD,
    DomainError,
    NumericsError,
    cf_to_pdf_grid,
    find_root,
    integrate,
    log_beta,
    log_gamma,
)


class ModelError(ValueError):
    """Raised when model parameters admit no arbitrage-free pricing measure."""


# --- market and claim types ---------------------------------------------------


@dataclass(frozen=True)
class LogisticLevy:
    """Levy motion whose unit-time marginal is Logistic(m, rho)."""

    m: float
    rho: float

    def __post_init__(self):
        if self.rho <= 0:
            raise ValueError("rho must be positive")


@dataclass(frozen=True)
class NegGumbelLevy:
    """Levy motion whose unit-time marginal is NegGumbel(mu, rho)."""

    mu: float
    rho: float

    def __post_init__(self):
        if self.rho <= 0:
            raise ValueError("rho must be positive")


LevyModel = Union[LogisticLevy, NegGumbelLevy]


@dataclass(frozen=True)
class LevyMarket:
    model: LevyModel
    spot: float
    riskless_rate: float

    def __post_init__(self):
        if self.spot <= 0:
            raise ValueError("spot must be positive")
        if self.riskless_rate <= 0:
            raise ValueError("riskless rate must be positive")


@dataclass(frozen=True)
class Call:
    strike: float

    def __post_init__(self):
        if self.strike <= 0:
            raise ValueError("strike must be positive")

    def __call__(self, s: float) -> float:
        return max(s - self.strike, 0.0)


@dataclass(frozen=True)
class Put:
    strike: float

    def __post_init__(self):
        if self.strike <= 0:
            raise ValueError("strike must be positive")

    def __call__(self, s: float) -> float:
        return max(self.strike - s, 0.0)


@dataclass(frozen=True)
class Custom:
    """Arbitrary payoff of the terminal price; must grow at most like s."""

    fn: Callable[[float], float]

    def __call__(self, s: float) -> float:
        return self.fn(s)


@dataclass(frozen=True)
class EuropeanClaim:
    payoff: Union[Call, Put, Custom]
    maturity: float

    def __post_init__(self):
        if self.maturity <= 0:
            raise ValueError("maturity must be positive")


@dataclass(frozen=True)
class EsscherSolution:
    h_q: float
    residual: float
    domain: tuple[float, float]


# --- characteristic and moment generating functions ---------------------------


def logistic_levy_cf(m: float, rho: float, t: float, theta: float) -> complex:
    """cf of the logistic Levy marginal at time t."""
    if t <= 0:
        raise DomainError("t must be positive")
    if theta == 0.0:
        return 1.0 + 0.0j
    z = 1j * rho * theta
    return np.exp(t * (1j * m * theta + log_beta(1.0 + z, 1.0 - z)))


def _log_mgf1(model: LevyModel, h: float) -> float:
    """ln E e^{h L(1)}, raising outside the convergence strip."""
    if h == 0.0:
        return 0.0
    if isinstance(model, LogisticLevy):
        if abs(h) >= 1.0 / model.rho:
            raise DomainError(
                f"logistic mgf defined on (-1/rho, 1/rho) = "
                f"({-1.0/model.rho:g}, {1.0/model.rho:g}); got h = {h}"
            )
        x = math.pi * model.rho * h
        return model.m * h + math.log(x / math.sin(x))
    if isinstance(model, NegGumbelLevy):
        if h <= -1.0 / model.rho:
            raise DomainError(
                f"negative-Gumbel mgf defined on (-1/rho, inf) = "
                f"({-1.0/model.rho:g}, inf); got h = {h}"
            )
        return model.mu * h + math.lgamma(1.0 + model.rho * h)
    raise TypeError(f"unknown model {model!r}")


def levy_mgf(model: LevyModel, t: float, h: float) -> float:
    """E e^{h L(t)} = (E e^{h L(1)})^t by stationary independent increments."""
    if t <= 0:
        raise DomainError("t must be positive")
    return math.exp(t * _log_mgf1(model, h))


def _model_cf(model: LevyModel, t: float) -> Callable[[float], complex]:
    if isinstance(model, LogisticLevy):
        return lambda theta: logistic_levy_cf(model.m, model.rho, t, theta)
    if isinstance(model, NegGumbelLevy):
        return lambda theta: (
            1.0 + 0.0j
            if theta == 0.0
            else np.exp(
                t * (1j * theta * model.mu + log_gamma(1.0 + 1j * model.rho * theta))
            )
        )
    raise TypeError(f"unknown model {model!r}")


# --- marginal densities (cached grids) ----------------------------------------

_GRID_POINTS = 4001
_TAIL_EPS = 1e-16


def _grid_half_bound(model: LevyModel, t: float, s: float) -> float:
    """Chernoff point a with e^{-sa} E e^{s L(t)} < eps (right tail for s>0)."""
    return (t * _log_mgf1(model, s) - math.log(_TAIL_EPS)) / s


def _tilt_bounds(model: LevyModel) -> tuple[float, float]:
    """Safe exponents for the Chernoff bounds, inside the mgf strip."""
    if isinstance(model, LogisticLevy):
        return -0.95 / model.rho, 0.95 / model.rho
    return -0.95 / model.rho, 6.0 / model.rho


@lru_cache(maxsize=64)
def _marginal_grid(model: LevyModel, t: float) -> tuple[np.ndarray, np.ndarray]:
    """Density of L(t) on a grid wide enough for exponential-order payoffs."""
    s_lo, s_hi = _tilt_bounds(model)
    lo = min(_grid_half_bound(model, t, s_lo), -1.0)
    hi = max(_grid_half_bound(model, t, s_hi), 1.0)
    xs = np.linspace(lo, hi, _GRID_POINTS)
    if t == 1.0:  # closed forms avoid inversion noise in the tails
        if isinstance(model, LogisticLevy):
            z = (xs - model.m) / model.rho
            fs = 0.25 / (model.rho * np.cosh(0.5 * z) ** 2)
        else:
            z = np.clip((xs - model.mu) / model.rho, -700.0, 700.0)
            fs = np.exp(z - np.exp(z)) / model.rho
    else:
        fs, _ = cf_to_pdf_grid(_model_cf(model, t), xs)
    xs.setflags(write=False)
    fs.setflags(write=False)
    return xs, fs


def _marginal_spline(model: LevyModel, t: float) -> CubicSpline:
    xs, fs = _marginal_grid(model, t)
    return CubicSpline(xs, fs, extrapolate=False)


def marginal_pdf(model: LevyModel, t: float, x: float) -> float:
    """Density of L(t) at x (closed form at t = 1, cf inversion otherwise)."""
    spline = _marginal_spline(model, t)
    v = spline(x)
    return float(max(v, 0.0)) if np.isfinite(v) else 0.0


def esscher_pdf(model: LevyModel, t: float, h: float, x: float) -> float:
    """Exponentially tilted marginal density e^{hx} M(h)^{-t} f_t(x)."""
    log_norm = t * _log_mgf1(model, h)
    return math.exp(h * x - log_norm) * marginal_pdf(model, t, x)


# --- martingale conditions ----------------------------------------------------


def solve_martingale_h(market: LevyMarket) -> EsscherSolution:
    """Esscher parameter making e^{-rt} S(t) a martingale.

    Solves r = ln M(h+1) - ln M(h) on the strip where both h and h+1 stay
    inside the mgf domain.
    """
    model = market.model
    r = market.riskless_rate
    if isinstance(model, LogisticLevy):
        if model.rho >= 0.5:
            raise ModelError(
                "logistic Esscher pricing needs rho < 1/2 so the tilt h and "
                f"h+1 both fit in the mgf strip; got rho = {model.rho}"
            )
        lo, hi = -1.0 / model.rho, 1.0 / model.rho - 1.0
    elif isinstance(model, NegGumbelLevy):
        lo, hi = -1.0 / model.rho, math.inf
    else:
        raise TypeError(f"unknown model {model!r}")

    def gap(h: float) -> float:
        return _log_mgf1(model, h + 1.0) - _log_mgf1(model, h) - r

    # shrink the open interval to a safe closed bracket, expanding as needed
    pad = 1e-9
    a = lo + pad if math.isfinite(lo) else -1.0
    b = hi - pad if math.isfinite(hi) else 1.0
    while math.isinf(hi) and gap(a) * gap(b) > 0 and b < 1e6:
        b *= 2.0
    try:
        h_q = find_root(gap, a, b, tol=1e-14)
    except DomainError as exc:
        raise ModelError(
            f"no Esscher martingale parameter in ({lo:g}, {hi:g}) for r = {r}"
        ) from exc
    residual = gap(h_q)
    if abs(residual) > 1e-10:
        raise ModelError(f"martingale residual {residual:g} exceeds tolerance")
    return EsscherSolution(h_q, residual, (lo, hi))


def neggumbel_rn_location(r: float, rho: float) -> float:
    """Risk-neutral location mu_q = r - ln Gamma(1 + rho)."""
    if rho <= 0:
        raise DomainError("rho must be positive")
    return r - math.lgamma(1.0 + rho)


# --- pricing ------------------------------------------------------------------


def _tilted_tail_integral(
    model: LevyModel, t: float, h: float, k: float
) -> float:
    """Integral of the h-tilted marginal density over (k, infinity)."""
    xs, _ = _marginal_grid(model, t)
    spline = _marginal_spline(model, t)
    hi = float(xs[-1])
    if k >= hi:
        return 0.0
    lo = max(k, float(xs[0]))
    log_norm = t * _log_mgf1(model, h)

    def integrand(x: float) -> float:
        v = spline(x)
        if not np.isfinite(v) or v <= 0.0:
            return 0.0
        return math.exp(h * x - log_norm) * float(v)

    return integrate(integrand, lo, hi)


def price_call_logistic(market: LevyMarket, K: float, T: float) -> float:
    """Esscher call price: S0 P_{h+1}(L > k) - e^{-rT} K P_h(L > k)."""
    if not isinstance(market.model, LogisticLevy):
        raise TypeError("price_call_logistic requires a LogisticLevy market")
    if K <= 0 or T <= 0:
        raise DomainError("strike and maturity must be positive")
    sol = solve_martingale_h(market)
    h = sol.h_q
    if abs(h + 1.0) >= 1.0 / market.model.rho:
        raise ModelError(
            f"tilt h+1 = {h+1:g} leaves the logistic mgf strip "
            f"(|h+1| must be < {1.0/market.model.rho:g})"
        )
    k = math.log(K / market.spot)
    term1 = market.spot * _tilted_tail_integral(market.model, T, h + 1.0, k)
    term2 = math.exp(-market.riskless_rate * T) * K * _tilted_tail_integral(
        market.model, T, h, k
    )
    price = term1 - term2
    lower = max(0.0, market.spot - K * math.exp(-market.riskless_rate * T))
    return min(max(price, lower), market.spot)


def _integrate_paneled(f: Callable[[float], float], a: float, b: float) -> float:
    """Adaptive quadrature on sub-panels of [a, b].

    Payoffs carry kinks at unknown locations; a single adaptive pass over a
    wide interval can settle before resolving them. Splitting into panels
    confines any kink to one short panel where the refinement converges.
    """
    edges = np.linspace(a, b, 65)
    return sum(integrate(f, float(lo), float(hi)) for lo, hi in zip(edges, edges[1:]))


def rn_model_neggumbel(market: LevyMarket) -> NegGumbelLevy:
    """The risk-neutral negative-Gumbel model (location shifted to mu_q)."""
    if not isinstance(market.model, NegGumbelLevy):
        raise TypeError("requires a NegGumbelLevy market")
    mu_q = neggumbel_rn_location(market.riskless_rate, market.model.rho)
    return NegGumbelLevy(mu_q, market.model.rho)


def price_ecc_neggumbel(market: LevyMarket, claim: EuropeanClaim) -> float:
    """Discounted risk-neutral expectation of the claim payoff.

    The risk-neutral marginal density of the negative-Gumbel Levy motion is
    recovered from its characteristic function and integrated against the
    payoff.
    """
    rn = rn_model_neggumbel(market)
    T = claim.maturity
    xs, _ = _marginal_grid(rn, T)
    spline = _marginal_spline(rn, T)
    g = claim.payoff
    S0 = market.spot

    def integrand(x: float) -> float:
        v = spline(x)
        if not np.isfinite(v) or v <= 0.0:
            return 0.0
        return g(S0 * math.exp(x)) * float(v)

    value = _integrate_paneled(integrand, float(xs[0]), float(xs[-1]))
    return math.exp(-market.riskless_rate * T) * value


def price_ecc_logistic(market: LevyMarket, claim: EuropeanClaim) -> float:
    """Discounted Esscher-measure expectation for the logistic model."""
    if not isinstance(market.model, LogisticLevy):
        raise TypeError("requires a LogisticLevy market")
    sol = solve_martingale_h(market)
    h = sol.h_q
    T = claim.maturity
    model = market.model
    xs, _ = _marginal_grid(model, T)
    spline = _marginal_spline(model, T)
    log_norm = T * _log_mgf1(model, h)
    g = claim.payoff
    S0 = market.spot

    def integrand(x: float) -> float:
        v = spline(x)
        if not np.isfinite(v) or v <= 0.0:
            return 0.0
        return g(S0 * math.exp(x)) * math.exp(h * x - log_norm) * float(v)

    value = _integrate_paneled(integrand, float(xs[0]), float(xs[-1]))
    return math.exp(-market.riskless_rate * T) * value
