"""Greed-fear binomial tree pricer and its dividend-yield diffusion limit."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .numerics import DomainError, erfc


class TreeConfigError(ValueError):
    """Tree step too coarse for positive prices / valid weights."""


@dataclass(frozen=True)
class GreedFearBinomialSpec:
    S0: float
    mu: float
    sigma: float
    r: float
    A: float
    n_steps: int
    maturity: float

    def __post_init__(self):
        if self.S0 <= 0 or self.sigma <= 0 or self.maturity <= 0:
            raise ValueError("S0, sigma and maturity must be positive")
        if not 0.0 < self.r < self.mu:
            raise ValueError("r must lie in (0, mu)")
        if self.n_steps < 1:
            raise ValueError("n_steps must be >= 1")
        _check_step(self)

    @property
    def dt(self) -> float:
        return self.maturity / self.n_steps

    @property
    def div_yield(self) -> float:
        """Implied greed-fear dividend yield D_y = (mu - r) A."""
        return (self.mu - self.r) * self.A

    @property
    def sharpe_invest(self) -> float:
        """theta = (mu + D_y - r) / sigma under the investor's measure."""
        return (self.mu + self.div_yield - self.r) / self.sigma


def _min_steps(spec: GreedFearBinomialSpec) -> int:
    """Smallest n with a positive down factor and weights inside (0, 1)."""
    T, mu, sig = spec.maturity, spec.mu, spec.sigma
    theta = spec.sharpe_invest
    n_prob = math.floor(T * theta**2) + 1 if theta != 0 else 1
    # down factor 1 + mu dt - sigma sqrt(dt) > 0: quadratic in y = sqrt(dt)
    disc = sig**2 - 4.0 * mu
    if mu > 0 and disc > 0:
        y_star = (sig - math.sqrt(disc)) / (2.0 * mu)
        n_down = math.floor(T / y_star**2) + 1
    elif mu > 0:
        n_down = 1
    else:
        n_down = math.floor(T * (sig / 1.0) ** 2) + 1  # mu <= 0: need sig sqrt(dt) < 1
    return max(1, n_prob, n_down)


def _check_step(spec: GreedFearBinomialSpec) -> None:
    dt = spec.maturity / spec.n_steps
    sq = math.sqrt(dt)
    if 1.0 + spec.mu * dt - spec.sigma * sq <= 0 or abs(spec.sharpe_invest) * sq >= 1:
        raise TreeConfigError(
            f"n_steps = {spec.n_steps} too coarse: need n >= {_min_steps(spec)} "
            "for a positive down factor and weights in (0, 1)"
        )


@dataclass(frozen=True)
class TreeNode:
    step: int
    up_count: int
    price: float


def level_prices(spec: GreedFearBinomialSpec, k: int) -> np.ndarray:
    """The k+1 recombining prices at level k, ordered by up-move count."""
    dt = spec.dt
    sq = spec.sigma * math.sqrt(dt)
    up = 1.0 + spec.mu * dt + sq
    dn = 1.0 + spec.mu * dt - sq
    j = np.arange(k + 1)
    return spec.S0 * up**j * dn ** (k - j)


def build_tree(spec: GreedFearBinomialSpec) -> list[list[TreeNode]]:
    """Full recombining lattice of TreeNode values (intended for small n)."""
    return [
        [TreeNode(k, j, float(p)) for j, p in enumerate(level_prices(spec, k))]
        for k in range(spec.n_steps + 1)
    ]


def hedge_ratio_node(
    C_up: float, C_dn: float, S_up: float, S_dn: float, G_node: float
) -> float:
    """Per-node stock holding: delta plus the greed-fear correction."""
    if S_up == S_dn:
        raise TreeConfigError("degenerate tree: S_up equals S_dn")
    spread = S_up - S_dn
    return (C_up - C_dn) / spread + G_node * (S_up + S_dn) / spread**2


def node_greed_fear(spec: GreedFearBinomialSpec, C_up: float, C_dn: float) -> float:
    """Greed-fear functional at a node: A sigma (C_up - C_dn) sqrt(dt)."""
    return spec.A * spec.sigma * (C_up - C_dn) * math.sqrt(spec.dt)


def price_binomial(
    spec: GreedFearBinomialSpec, g: Callable[[np.ndarray], np.ndarray]
) -> float:
    """Backward induction with greed-fear-adjusted weights and per-step discount.

    Weights are 1/2 -/+ (theta/2) sqrt(dt) with theta = (mu + D_y - r)/sigma,
    D_y = (mu - r) A; each step discounts at e^{-r dt}.
    """
    dt = spec.dt
    sq = math.sqrt(dt)
    theta = spec.sharpe_invest
    w_up = 0.5 - 0.5 * theta * sq
    w_dn = 0.5 + 0.5 * theta * sq
    disc = math.exp(-spec.r * dt)
    values = np.asarray(g(level_prices(spec, spec.n_steps)), dtype=float)
    for k in range(spec.n_steps - 1, -1, -1):
        values = disc * (w_up * values[1:] + w_dn * values[:-1])
    return float(values[0])


def _norm_cdf(z: float) -> float:
    return 0.5 * erfc(-z / math.sqrt(2.0))


def price_closed_form_dividend(
    S: float, K: float, t: float, T: float, r: float, sigma: float, D_y: float
) -> float:
    """Call on a stock paying continuous yield D_y (diffusion limit of the tree)."""
    if T <= t:
        raise DomainError("T must exceed t")
    if S <= 0 or K <= 0 or sigma <= 0:
        raise DomainError("S, K and sigma must be positive")
    tau = T - t
    sq = sigma * math.sqrt(tau)
    d1 = (math.log(S / K) + (r - D_y + 0.5 * sigma**2) * tau) / sq
    d2 = d1 - sq
    return S * math.exp(-D_y * tau) * _norm_cdf(d1) - K * math.exp(-r * tau) * _norm_cdf(
        d2
    )
