"""Greed-fear hedging under Ito dynamics.

Derived discount/yield/reward coefficients, a Feynman-Kac Monte Carlo
solver for the pricing PDE, and the constant-coefficient closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .numerics import DomainError, NumericsError, erfc, integrate

CoefFn = Callable[[float, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class GreedFearDiffusionSpec:
    """Coefficient functions of (t, x); each must broadcast over x arrays.

    mu/sigma describe the traded stock, mu_tau/sigma_tau the investor's
    target dynamics, r the riskless rate and G the greed-fear functional
    (G > -1 pointwise).
    """

    mu: CoefFn
    sigma: CoefFn
    mu_tau: CoefFn
    sigma_tau: CoefFn
    r: CoefFn
    G: CoefFn


def constant_diffusion_spec(
    mu: float,
    sigma: float,
    r: float,
    G: float,
    mu_tau: Optional[float] = None,
    sigma_tau: Optional[float] = None,
) -> GreedFearDiffusionSpec:
    """Constant-coefficient spec; defaults mu_tau = (1+G) mu, sigma_tau = sigma."""
    if sigma <= 0 or r <= 0:
        raise ValueError("sigma and r must be positive")
    if G <= -1:
        raise ValueError("G must exceed -1")
    mt = (1.0 + G) * mu if mu_tau is None else mu_tau
    st = sigma if sigma_tau is None else sigma_tau
    if st <= 0:
        raise ValueError("sigma_tau must be positive")

    def const(v: float) -> CoefFn:
        return lambda t, x: v + np.zeros_like(np.asarray(x, dtype=float))

    return GreedFearDiffusionSpec(
        const(mu), const(sigma), const(mt), const(st), const(r), const(G)
    )


@dataclass(frozen=True)
class DerivedCoefficients:
    r_invest: float
    sharpe: float
    sharpe_tau: float
    div_yield: float
    drift_R: float
    reward_h: float


def _coefficients_arrays(
    spec: GreedFearDiffusionSpec, t: float, x: np.ndarray, include_Gr_term: bool
):
    mu = spec.mu(t, x)
    sigma = spec.sigma(t, x)
    mu_t = spec.mu_tau(t, x)
    sigma_t = spec.sigma_tau(t, x)
    r = spec.r(t, x)
    G = spec.G(t, x)
    if np.any(sigma <= 0) or np.any(sigma_t <= 0):
        raise DomainError("sigma and sigma_tau must be positive")
    if np.any(G <= -1):
        raise DomainError("G must exceed -1")
    theta = (mu - r) / sigma
    theta_t = (mu_t - r) / sigma_t
    div_yield = (theta_t * sigma_t**2 - theta * sigma**2) / sigma
    if include_Gr_term:
        div_yield = div_yield + G * r
    r_invest = r * (1.0 + G)
    drift = r_invest - div_yield
    reward = theta_t**2 * G
    return r_invest, theta, theta_t, div_yield, drift, reward


def derived_coefficients(
    spec: GreedFearDiffusionSpec,
    t: float,
    x: float,
    include_Gr_term: bool = False,
) -> DerivedCoefficients:
    """Pointwise discount rate, Sharpe ratios, yield, drift and reward."""
    if x <= 0:
        raise DomainError("price x must be positive")
    xa = np.asarray(x, dtype=float)
    vals = _coefficients_arrays(spec, t, xa, include_Gr_term)
    return DerivedCoefficients(*(float(np.asarray(v)) for v in vals[:1] + vals[1:]))


@dataclass(frozen=True)
class MonteCarloSettings:
    n_paths: int = 100_000
    n_steps: int = 100
    seed: int = 0
    antithetic: bool = True

    def __post_init__(self):
        if self.n_paths < 1 or self.n_steps < 1:
            raise ValueError("n_paths and n_steps must be >= 1")


def price_fk_monte_carlo(
    spec: GreedFearDiffusionSpec,
    g: Callable[[np.ndarray], np.ndarray],
    t: float,
    x: float,
    T: float,
    mc: MonteCarloSettings,
    include_Gr_term: bool = False,
) -> tuple[float, float]:
    """Feynman-Kac Monte Carlo price and standard error.

    Simulates dX/X = R ds + sigma dB by log-Euler stepping and accumulates
    the discounted payoff minus the accumulated discounted running reward,
    with trapezoid time integrals for both the discount rate and the reward.
    """
    if T <= t:
        raise DomainError("T must exceed t")
    if x <= 0:
        raise DomainError("x must be positive")
    n = mc.n_paths
    anti = mc.antithetic and n >= 2
    half = n // 2 if anti else n
    n_eff = 2 * half if anti else n
    rng = np.random.Generator(np.random.Philox(mc.seed))
    dt = (T - t) / mc.n_steps
    sqdt = math.sqrt(dt)

    log_x = np.full(n_eff, math.log(x))
    disc = np.zeros(n_eff)  # integral of r_invest along the path
    reward = np.zeros(n_eff)  # integral of e^{-disc} h along the path

    xs = np.exp(log_x)
    r_inv, _, _, _, drift, h = _coefficients_arrays(spec, t, xs, include_Gr_term)
    r_prev = np.broadcast_to(r_inv, xs.shape).copy()
    integ_prev = np.broadcast_to(np.exp(-disc) * h, xs.shape).copy()

    for k in range(mc.n_steps):
        s = t + k * dt
        z_half = rng.standard_normal(half)
        z = np.concatenate([z_half, -z_half]) if anti else z_half
        sig = np.broadcast_to(spec.sigma(s, xs), xs.shape)
        log_x = log_x + (drift - 0.5 * sig**2) * dt + sig * sqdt * z
        if not np.all(np.isfinite(log_x)):
            raise NumericsError("non-finite log-price during simulation (drift/sigma)")
        xs = np.exp(log_x)
        s_next = s + dt
        r_inv, _, _, _, drift, h = _coefficients_arrays(
            spec, s_next, xs, include_Gr_term
        )
        r_inv = np.broadcast_to(r_inv, xs.shape)
        disc = disc + 0.5 * (r_prev + r_inv) * dt
        integ = np.exp(-disc) * np.broadcast_to(h, xs.shape)
        reward = reward + 0.5 * (integ_prev + integ) * dt
        r_prev = r_inv.copy()
        integ_prev = integ

    values = np.exp(-disc) * np.asarray(g(xs), dtype=float) - reward
    if anti:
        values = 0.5 * (values[:half] + values[half:])
    price = float(values.mean())
    se = float(values.std(ddof=1) / math.sqrt(len(values))) if len(values) > 1 else 0.0
    return price, se


def _norm_cdf(z: float) -> float:
    return 0.5 * erfc(-z / math.sqrt(2.0))


def price_call_closed_form(
    S: float,
    K: float,
    t: float,
    T: float,
    r: float,
    sigma: float,
    mu: float,
    G: float,
) -> float:
    """Constant-coefficient greed-fear call price.

    The stock drifts at R = r - G(mu - r) under the pricing dynamics, is
    discounted at r(1+G), carries the synthetic yield G mu, and pays the
    running reward h = ((1+G)mu - r)^2 G / sigma^2 continuously; the three
    terms below are the closed-form expectation of that functional.
    """
    if T <= t:
        raise DomainError("T must exceed t")
    if S <= 0 or K <= 0 or sigma <= 0 or r <= 0:
        raise DomainError("S, K, sigma, r must be positive")
    if G <= -1:
        raise DomainError("G must exceed -1")
    tau = T - t
    r_invest = r * (1.0 + G)
    drift = r - G * (mu - r)
    h = ((1.0 + G) * mu - r) ** 2 * G / sigma**2
    sq = sigma * math.sqrt(tau)
    d1 = (math.log(S / K) + (drift + 0.5 * sigma**2) * tau) / sq
    d2 = d1 - sq
    stock_disc = math.exp((drift - r_invest) * tau)  # = e^{-G mu tau}
    reward_term = (
        h * tau if r_invest == 0.0 else h * (1.0 - math.exp(-r_invest * tau)) / r_invest
    )
    return (
        S * stock_disc * _norm_cdf(d1)
        - K * math.exp(-r_invest * tau) * _norm_cdf(d2)
        - reward_term
    )


def hedge_ratios(
    spec: GreedFearDiffusionSpec, t: float, S: float, f: float, f_x: float
) -> tuple[float, float]:
    """Optimal stock and bond holdings (a, b) for a hedger with value f, delta f_x.

    a carries the greed-fear correction on top of the volatility-adjusted
    delta; b closes the portfolio identity a S + b beta = f (1 + G) with
    beta(t) = exp(integral of r over [0, t]).
    """
    if S <= 0:
        raise DomainError("S must be positive")
    xa = np.asarray(S, dtype=float)
    sigma = float(np.asarray(spec.sigma(t, xa)))
    sigma_t = float(np.asarray(spec.sigma_tau(t, xa)))
    mu_t = float(np.asarray(spec.mu_tau(t, xa)))
    r_now = float(np.asarray(spec.r(t, xa)))
    G = float(np.asarray(spec.G(t, xa)))
    if sigma <= 0 or sigma_t <= 0:
        raise DomainError("sigma and sigma_tau must be positive")
    a = sigma * f_x / sigma_t + G * (mu_t - r_now) / (sigma_t**2 * S)
    if t == 0.0:
        beta = 1.0
    else:
        beta = math.exp(
            integrate(lambda s: float(np.asarray(spec.r(s, xa))), 0.0, t)
        )
    b = (f * (1.0 + G) - a * S) / beta
    return a, b
