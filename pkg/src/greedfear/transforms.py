"""Prospect-theory value functions and probability weighting functions.

Closed-form behavioral families plus the general construction that composes
two distribution functions; penalized cdfs, posterior statistics and
greed/fear classification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Optional, Union

import numpy as np

from . import distributions as dist
from .numerics import (
    EULER_MASCHERONI,
    DomainError,
    DEFAULT_QUAD,
    erfc,
    erfc_inv,
    find_root,
    integrate,
)

# --- value functions ----------------------------------------------------------


@dataclass(frozen=True)
class TKValue:
    """Piecewise-power value transform: x^alpha on gains, -lam(-x)^beta on losses."""

    alpha: float = 0.88
    beta: float = 0.88
    lam: float = 2.25
    kind = "tk"

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")
        if not 0.0 < self.beta < 1.0:
            raise ValueError("beta must lie in (0, 1)")
        if self.lam <= 1.0:
            raise ValueError("lam must exceed 1")

    def __call__(self, x: float) -> float:
        if x >= 0:
            return x**self.alpha
        return -self.lam * (-x) ** self.beta


@dataclass(frozen=True)
class LogForm:
    """Logarithmic value transform: a ln x + c on gains, -lam ln(-x) - nu on losses.

    Unbounded near 0: returns signed infinities at x = 0.
    """

    a: float
    c: float
    lam: float
    nu: float
    kind = "logform"

    def __post_init__(self):
        if self.a <= 0 or self.lam <= 0:
            raise ValueError("a and lam must be positive")

    def __call__(self, x: float) -> float:
        if x == 0.0:
            return -math.inf
        if x > 0:
            return self.a * math.log(x) + self.c
        return -self.lam * math.log(-x) - self.nu

    def difference_cf(self, theta: float) -> complex:
        """cf of the transformed symmetric-exponential pair (difference of Gumbels)."""
        from .numerics import log_gamma

        return np.exp(
            1j * theta * (self.c + self.nu)
            + log_gamma(1.0 + 1j * self.a * theta)
            + log_gamma(1.0 - 1j * self.lam * theta)
        )


@dataclass(frozen=True)
class ComposedValue:
    """Quantile-of-posterior after cdf-of-prior: x -> Q_post(F_prior(x))."""

    prior: dist.Distribution
    post: dist.Distribution
    kind = "composed"

    def __call__(self, x: float) -> float:
        u = self.prior.cdf(x)
        if not 0.0 < u < 1.0:
            raise DomainError(f"x={x} outside the interior of the prior support")
        return self.post.quantile(u)


ValueFunction = Union[TKValue, LogForm, ComposedValue]


def eval_value_function(vf: ValueFunction, x: float) -> float:
    return vf(x)


def fit_logform_to_tk(alpha: float) -> tuple[float, float]:
    """Log-form coefficients matching the power transform's value and slope at 1/2."""
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    half_pow = 0.5**alpha
    return alpha * half_pow, half_pow * (1.0 + alpha * math.log(2.0))


def value_function_from_cdfs(
    prior: dist.Distribution, post: dist.Distribution
) -> ComposedValue:
    """Monotone transform carrying the prior return law onto the posterior law."""
    return ComposedValue(prior, post)


# --- weighting functions ------------------------------------------------------


def _check_unit_interior(u: float) -> None:
    if not 0.0 < u < 1.0:
        raise DomainError(f"weighting argument must lie in (0, 1), got {u}")


@dataclass(frozen=True)
class TKWeight:
    """u^g / (u^g + (1-u)^g)^(1/g); g < 1 fearful, g > 1 greedy."""

    gamma: float
    kind = "tk"

    def __post_init__(self):
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")

    def __call__(self, u: float) -> float:
        _check_unit_interior(u)
        g = self.gamma
        return u**g / (u**g + (1.0 - u) ** g) ** (1.0 / g)


@dataclass(frozen=True)
class GoldsteinEinhorn:
    """a u^g / (a u^g + (1-u)^g); the height parameter a preserves w(1)=1."""

    gamma: float
    a: float
    kind = "goldstein_einhorn"

    def __post_init__(self):
        if self.a <= 1:
            raise ValueError("a must exceed 1")

    def __call__(self, u: float) -> float:
        _check_unit_interior(u)
        g = self.gamma
        num = self.a * u**g
        return num / (num + (1.0 - u) ** g)


@dataclass(frozen=True)
class Prelec:
    """exp(-(-delta ln u)^rho); fixed point at 1/e when delta = 1."""

    delta: float
    rho: float
    kind = "prelec"

    def __post_init__(self):
        if self.delta <= 0 or self.rho <= 0:
            raise ValueError("delta and rho must be positive")

    def __call__(self, u: float) -> float:
        _check_unit_interior(u)
        return math.exp(-((-self.delta * math.log(u)) ** self.rho))


@dataclass(frozen=True)
class ModifiedPrelec:
    """1 - exp(-(-delta ln(1-u))^rho); reflected Prelec acting on the loss tail."""

    delta: float
    rho: float
    kind = "modified_prelec"

    def __post_init__(self):
        if self.delta <= 0 or self.rho <= 0:
            raise ValueError("delta and rho must be positive")

    def __call__(self, u: float) -> float:
        _check_unit_interior(u)
        return -math.expm1(-((-self.delta * math.log1p(-u)) ** self.rho))


@dataclass(frozen=True)
class PrelecExpPower:
    """exp(-(eta/gamma)(1 - u^gamma)). Evaluator only: w(0+) > 0."""

    gamma: float
    eta: float
    kind = "prelec_exp_power"

    def __post_init__(self):
        if self.gamma <= 0 or self.eta <= 0:
            raise ValueError("gamma and eta must be positive")

    def __call__(self, u: float) -> float:
        _check_unit_interior(u)
        return math.exp(-(self.eta / self.gamma) * (1.0 - u**self.gamma))


@dataclass(frozen=True)
class PrelecHyperLog:
    """(1 - gamma ln u)^(-eta/gamma). Evaluator only."""

    gamma: float
    eta: float
    kind = "prelec_hyper_log"

    def __post_init__(self):
        if self.gamma <= 0 or self.eta <= 0:
            raise ValueError("gamma and eta must be positive")

    def __call__(self, u: float) -> float:
        _check_unit_interior(u)
        return (1.0 - self.gamma * math.log(u)) ** (-self.eta / self.gamma)


@dataclass(frozen=True)
class Luce:
    """exp(-beta ((1-u)/u)^alpha). Evaluator only."""

    alpha: float
    beta: float
    kind = "luce"

    def __post_init__(self):
        if self.alpha <= 0 or self.beta <= 0:
            raise ValueError("alpha and beta must be positive")

    def __call__(self, u: float) -> float:
        _check_unit_interior(u)
        return math.exp(-self.beta * ((1.0 - u) / u) ** self.alpha)


@dataclass(frozen=True)
class ComposedWeight:
    """Posterior cdf after prior quantile: u -> F_post(Q_prior(u))."""

    prior: dist.Distribution
    post: dist.Distribution
    kind = "composed"

    def __call__(self, u: float) -> float:
        _check_unit_interior(u)
        return self.post.cdf(self.prior.quantile(u))


WeightingFunction = Union[
    TKWeight,
    GoldsteinEinhorn,
    Prelec,
    ModifiedPrelec,
    PrelecExpPower,
    PrelecHyperLog,
    Luce,
    ComposedWeight,
]


def eval_wpf(w: WeightingFunction, u: float) -> float:
    return w(u)


def wpf_from_cdfs(prior: dist.Distribution, post: dist.Distribution) -> ComposedWeight:
    """The weighting function solving F_post = w o F_prior."""
    return ComposedWeight(prior, post)


def specialize_wpf(
    prior: dist.Distribution, post: dist.Distribution
) -> Optional[WeightingFunction]:
    """Closed-form family equal to wpf_from_cdfs(prior, post), when one exists."""
    P, Q = prior, post
    if isinstance(P, dist.NegGumbel) and isinstance(Q, dist.NegGumbel):
        return ModifiedPrelec(
            delta=math.exp((P.mu - Q.mu) / P.rho), rho=P.rho / Q.rho
        )
    if isinstance(P, dist.Gumbel) and isinstance(Q, dist.Gumbel):
        return Prelec(delta=math.exp((Q.mu - P.mu) / P.rho), rho=P.rho / Q.rho)
    if isinstance(P, dist.Logistic) and isinstance(Q, dist.Logistic):
        c = math.exp(-(P.m - Q.m) / Q.rho)
        b = P.rho / Q.rho
        return _Formula(lambda u: 1.0 / (1.0 + c * ((1.0 - u) / u) ** b))
    if isinstance(P, dist.Logistic) and isinstance(Q, dist.Gumbel):
        c = math.exp(-(P.m - Q.mu) / Q.rho)
        b = P.rho / Q.rho
        return _Formula(lambda u: math.exp(-c * ((1.0 - u) / u) ** b))
    if isinstance(P, dist.DoublePareto) and isinstance(Q, dist.DoublePareto):
        g = (1.0 - Q.rho) / (1.0 - P.rho)
        return _Formula(_two_sided_power(g))
    if isinstance(P, dist.DoublePareto) and isinstance(Q, dist.Laplace) and Q.m == 0.0:
        e = 1.0 / (1.0 - P.rho)
        b = Q.b

        def _dp_laplace(u):
            if u < 0.5:
                return 0.5 * math.exp((1.0 - (2.0 * u) ** e) / b)
            return 1.0 - 0.5 * math.exp((1.0 - (2.0 - 2.0 * u) ** e) / b)

        return _Formula(_dp_laplace)
    if isinstance(P, dist.Cauchy) and isinstance(Q, dist.Cauchy):
        a = P.c / Q.c
        return _Formula(
            lambda u: 0.5 + math.atan(a * math.tan(math.pi * u - math.pi / 2)) / math.pi
        )
    if isinstance(P, dist.Cauchy) and isinstance(Q, dist.Gumbel):
        return _Formula(
            lambda u: math.exp(
                -math.exp(
                    -(P.c * math.tan(math.pi * u - math.pi / 2) - Q.mu) / Q.rho
                )
            )
        )
    if isinstance(P, dist.Laplace) and isinstance(Q, dist.Laplace) and P.m == Q.m:
        return _Formula(_two_sided_power(P.b / Q.b))
    if isinstance(P, dist.Gaussian) and isinstance(Q, dist.Gaussian):
        return _Formula(
            lambda u: 0.5
            * erfc(
                (Q.mu - P.mu + math.sqrt(2.0) * P.sigma * erfc_inv(2.0 * u))
                / (math.sqrt(2.0) * Q.sigma)
            )
        )
    if isinstance(P, dist.Gaussian) and isinstance(Q, dist.NegGumbel):
        return _Formula(
            lambda u: -math.expm1(
                -math.exp(
                    (P.mu - Q.mu - math.sqrt(2.0) * P.sigma * erfc_inv(2.0 * u)) / Q.rho
                )
            )
        )
    if isinstance(P, dist.Gaussian) and isinstance(Q, dist.Logistic):
        return _Formula(
            lambda u: 1.0
            / (
                1.0
                + math.exp(
                    (Q.m - P.mu + math.sqrt(2.0) * P.sigma * erfc_inv(2.0 * u)) / Q.rho
                )
            )
        )
    return None


def _two_sided_power(g: float):
    def w(u):
        if u < 0.5:
            return 0.5 * (2.0 * u) ** g
        return 1.0 - 0.5 * (2.0 - 2.0 * u) ** g

    return w


@dataclass(frozen=True)
class _Formula:
    """Closed-form weighting function given by an explicit callable."""

    fn: object
    kind = "formula"

    def __call__(self, u: float) -> float:
        _check_unit_interior(u)
        return self.fn(u)


# --- penalized cdfs and posterior statistics ----------------------------------


@dataclass(frozen=True)
class PenalizedCdf:
    """The investor's posterior return cdf: x -> w(F_prior(x))."""

    weight: WeightingFunction
    prior: dist.Distribution

    def __call__(self, x: float) -> float:
        u = self.prior.cdf(x)
        if u <= 0.0:
            return 0.0
        if u >= 1.0:
            return 1.0
        return self.weight(u)

    def quantile(self, v: float) -> float:
        _check_unit_interior(v)
        lo, hi = self.prior.support()
        if math.isinf(lo):
            lo = -1.0
            while self(lo) > v:
                lo *= 2.0
        if math.isinf(hi):
            hi = 1.0
            while self(hi) < v:
                hi *= 2.0
        return find_root(lambda x: self(x) - v, lo, hi, tol=1e-12)


def penalized_cdf(w: WeightingFunction, prior: dist.Distribution) -> PenalizedCdf:
    return PenalizedCdf(w, prior)


@dataclass(frozen=True)
class PosteriorStats:
    mean: float
    variance: float
    std: float
    information_ratio: float


_TAIL_MASS = 1e-12


def posterior_stats(
    penalized, support_hint: tuple[float, float], settings=DEFAULT_QUAD
) -> PosteriorStats:
    """Mean/variance of a cdf by tail integration; IR against a zero benchmark."""
    lo, hi = support_hint
    while penalized(lo) > _TAIL_MASS:
        lo = lo * 2.0 if lo < -1.0 else lo - 1.0
        if lo < -1e9:
            raise DomainError("left tail mass does not vanish; check the cdf")
    while 1.0 - penalized(hi) > _TAIL_MASS:
        hi = hi * 2.0 if hi > 1.0 else hi + 1.0
        if hi > 1e9:
            raise DomainError("right tail mass does not vanish; check the cdf")
    upper = integrate(lambda x: 1.0 - penalized(x), 0.0, hi, settings) if hi > 0 else 0.0
    lower = integrate(penalized, lo, 0.0, settings) if lo < 0 else 0.0
    mean = upper - lower
    ex2_pos = (
        integrate(lambda x: 2.0 * x * (1.0 - penalized(x)), 0.0, hi, settings)
        if hi > 0
        else 0.0
    )
    ex2_neg = (
        integrate(lambda x: -2.0 * x * penalized(x), lo, 0.0, settings) if lo < 0 else 0.0
    )
    var = ex2_pos + ex2_neg - mean * mean
    std = math.sqrt(max(var, 0.0))
    ir = mean / std if std > 0 else 0.0
    return PosteriorStats(mean, var, std, ir)


def _ng_information_ratio(mu: float, rho: float) -> float:
    return (mu - rho * EULER_MASCHERONI) / (math.pi / math.sqrt(6.0) * rho)


def mpwpf_posterior(
    mu: float, scale: float, delta: float, rho: float
) -> tuple[tuple[float, float], float]:
    """Posterior negative-Gumbel parameters under the reflected-Prelec weight,
    and the induced information-ratio shift.

    Returns ((mu', scale'), ir_shift) with mu' = mu - scale ln(delta) and
    scale' = scale / rho; the shift is computed from the moment formulas
    directly (it equals (sqrt6/pi)((rho-1) mu / scale - rho ln delta)).
    """
    if scale <= 0 or delta <= 0 or rho <= 0:
        raise ValueError("scale, delta and rho must be positive")
    mu2 = mu - scale * math.log(delta)
    scale2 = scale / rho
    ir_shift = _ng_information_ratio(mu2, scale2) - _ng_information_ratio(mu, scale)
    return (mu2, scale2), ir_shift


# --- shape classification and stochastic dominance ----------------------------

_CLASSIFY_GRID = 199
_CLASSIFY_TOL = 1e-9


def classify_disposition(w: WeightingFunction) -> str:
    """fearful / greedy / neutral / mixed from the sign pattern of w''."""
    n = _CLASSIFY_GRID
    h = 1.0 / (n + 1)
    us = np.arange(1, n + 1) * h
    vals = np.array([w(float(u)) for u in us])
    second = (vals[2:] - 2.0 * vals[1:-1] + vals[:-2]) / (h * h)
    signs = [0 if abs(s) < _CLASSIFY_TOL else (1 if s > 0 else -1) for s in second]
    nz = [s for s in signs if s != 0]
    if not nz:
        return "neutral"
    flips = sum(1 for a, b in zip(nz, nz[1:]) if a != b)
    if flips == 0:
        return "mixed"  # purely convex or purely concave: no inflection
    if flips == 1:
        return "fearful" if (nz[0] < 0 and nz[-1] > 0) else "greedy"
    return "mixed"


def fosd_check(
    a: dist.Distribution, b: dist.Distribution, grid_points: int = 201
) -> bool:
    """First-order dominance of a over b: F_a <= F_b on a quantile-spanning grid."""
    if grid_points < 100:
        raise ValueError("grid_points must be >= 100")
    lo = min(a.quantile(1e-6), b.quantile(1e-6))
    hi = max(a.quantile(1.0 - 1e-6), b.quantile(1.0 - 1e-6))
    for x in np.linspace(lo, hi, grid_points):
        if a.cdf(float(x)) > b.cdf(float(x)) + 1e-12:
            return False
    return True


# --- JSON tagging for the CLI -------------------------------------------------

_WPF_KINDS = {
    "tk": TKWeight,
    "goldstein_einhorn": GoldsteinEinhorn,
    "prelec": Prelec,
    "modified_prelec": ModifiedPrelec,
    "prelec_exp_power": PrelecExpPower,
    "prelec_hyper_log": PrelecHyperLog,
    "luce": Luce,
}

_VF_KINDS = {"tk": TKValue, "logform": LogForm}


def wpf_from_json(obj: dict) -> WeightingFunction:
    data = dict(obj)
    kind = data.pop("kind", None)
    if kind == "composed":
        return ComposedWeight(
            dist.from_json(data["prior"]), dist.from_json(data["post"])
        )
    if kind not in _WPF_KINDS:
        raise ValueError(f"unknown weighting-function kind {kind!r}")
    return _WPF_KINDS[kind](**{k: float(v) for k, v in data.items()})


def value_function_from_json(obj: dict) -> ValueFunction:
    data = dict(obj)
    kind = data.pop("kind", None)
    if kind == "composed":
        return ComposedValue(
            dist.from_json(data["prior"]), dist.from_json(data["post"])
        )
    if kind not in _VF_KINDS:
        raise ValueError(f"unknown value-function kind {kind!r}")
    return _VF_KINDS[kind](**{k: float(v) for k, v in data.items()})


def transform_to_json(t) -> dict:
    if isinstance(t, (ComposedWeight, ComposedValue)):
        return {
            "kind": "composed",
            "prior": t.prior.to_json(),
            "post": t.post.to_json(),
        }
    d = {"kind": t.kind}
    for f in fields(t):
        d[f.name] = getattr(t, f.name)
    return d
