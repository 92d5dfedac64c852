"""Least-squares calibration of implied volatility and greed-fear yield.

The objective is the sum of squared relative pricing errors against the
dividend-yield closed form; a deterministic multistart Nelder-Mead driver
is reusable for other pricers.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import optimize as _sp_optimize

from .binomial import price_closed_form_dividend


class QuoteError(ValueError):
    """Malformed or insufficient quote data."""


@dataclass(frozen=True)
class OptionQuote:
    strike: float
    maturity: float
    mid_price: float

    def __post_init__(self):
        if self.strike <= 0 or self.maturity <= 0 or self.mid_price <= 0:
            raise ValueError("strike, maturity and mid_price must be positive")


@dataclass(frozen=True)
class CalibrationResult:
    sigma_impl: float
    dy_impl: float
    objective: float
    n_iterations: int
    converged: bool


@dataclass(frozen=True)
class GenericCalibrationResult:
    params: tuple[float, ...]
    objective: float
    n_iterations: int
    converged: bool


@dataclass(frozen=True)
class CalibrationSettings:
    sigma_bounds: tuple[float, float] = (1e-4, 5.0)
    dy_bounds: tuple[float, float] = (-1.0, 1.0)
    tol: float = 1e-10
    max_iter: int = 2000
    multistart: int = 8

    def __post_init__(self):
        if self.sigma_bounds[0] >= self.sigma_bounds[1]:
            raise ValueError("sigma_bounds must be ordered")
        if self.dy_bounds[0] >= self.dy_bounds[1]:
            raise ValueError("dy_bounds must be ordered")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1 or self.multistart < 1:
            raise ValueError("max_iter and multistart must be >= 1")


def load_quotes(path: str) -> list[OptionQuote]:
    """Read `strike,maturity,mid_price` CSV quotes, validating every row."""
    try:
        fh = open(path, newline="")
    except OSError as exc:
        raise QuoteError(f"cannot open quote file {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise QuoteError("empty quote file (no header)") from None
        expected = ["strike", "maturity", "mid_price"]
        if [h.strip() for h in header] != expected:
            raise QuoteError(f"bad header {header}; expected {expected}")
        quotes = []
        for i, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 3:
                raise QuoteError(f"row {i}: expected 3 fields, got {len(row)}")
            try:
                vals = [float(c) for c in row]
            except ValueError:
                raise QuoteError(f"row {i}: non-numeric field in {row}") from None
            try:
                quotes.append(OptionQuote(*vals))
            except ValueError as exc:
                raise QuoteError(f"row {i}: {exc}") from None
    if not quotes:
        raise QuoteError("no quotes in file")
    return quotes


def _relative_sq_error(
    quotes: Sequence[OptionQuote], model_price: Callable[[OptionQuote], float]
) -> float:
    total = 0.0
    for q in quotes:
        model = model_price(q)
        if abs(model) < 1e-10:
            # deep-OTM guard: treat the model price as exactly zero. The
            # limiting relative error is 1, which keeps the objective
            # continuous; dropping the quote instead would let an optimizer
            # reach zero objective by pricing everything at zero.
            warnings.warn(
                f"model price ~0 for strike {q.strike}, maturity {q.maturity}; "
                "contributing the limiting relative error 1"
            )
            total += 1.0
            continue
        total += ((q.mid_price - model) / q.mid_price) ** 2
    return total


def objective(
    quotes: Sequence[OptionQuote], S0: float, r: float, sigma: float, D_y: float
) -> float:
    """Sum of squared relative errors of the dividend-yield closed form."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    return _relative_sq_error(
        quotes,
        lambda q: price_closed_form_dividend(S0, q.strike, 0.0, q.maturity, r, sigma, D_y),
    )


def _multistart_points(box: Sequence[tuple[float, float]], n: int) -> np.ndarray:
    """Deterministic low-discrepancy-ish grid of n interior starting points."""
    dim = len(box)
    # golden-ratio lattice: reproducible and reasonably space-filling
    alpha = np.array([(0.5 * (math.sqrt(5) - 1)) ** (k + 1) for k in range(dim)])
    pts = np.mod(0.5 + np.outer(np.arange(1, n + 1), alpha), 1.0)
    lo = np.array([b[0] for b in box])
    hi = np.array([b[1] for b in box])
    return lo + (0.05 + 0.9 * pts) * (hi - lo)


def _nelder_mead(
    fn: Callable[[np.ndarray], float],
    box: Sequence[tuple[float, float]],
    settings: CalibrationSettings,
) -> tuple[np.ndarray, float, int, bool]:
    lo = np.array([b[0] for b in box])
    hi = np.array([b[1] for b in box])

    def clipped(p: np.ndarray) -> float:
        q = np.clip(p, lo, hi)
        penalty = float(np.sum((p - q) ** 2))
        return fn(q) + penalty

    best = None
    total_iter = 0
    any_converged = False
    for start in _multistart_points(box, settings.multistart):
        res = _sp_optimize.minimize(
            clipped,
            start,
            method="Nelder-Mead",
            options={
                "xatol": settings.tol,
                "fatol": settings.tol,
                "maxiter": settings.max_iter,
            },
        )
        total_iter += res.nit
        any_converged = any_converged or bool(res.success)
        if best is None or res.fun < best[1]:
            best = (np.clip(res.x, lo, hi), float(res.fun))
    return best[0], best[1], total_iter, any_converged


def calibrate_sigma_dy(
    quotes: Sequence[OptionQuote],
    S0: float,
    r: float,
    settings: CalibrationSettings = CalibrationSettings(),
) -> CalibrationResult:
    """Fit (sigma, D_y) to call quotes by relative least squares."""
    if len(quotes) < 2 or len({q.strike for q in quotes}) < 2:
        raise QuoteError("need at least 2 quotes with 2 distinct strikes")
    box = [settings.sigma_bounds, settings.dy_bounds]
    point, fval, n_iter, converged = _nelder_mead(
        lambda p: objective(quotes, S0, r, float(p[0]), float(p[1])), box, settings
    )
    return CalibrationResult(float(point[0]), float(point[1]), fval, n_iter, converged)


def calibrate_generic(
    quotes: Sequence[OptionQuote],
    S0: float,
    r: float,
    pricer: Callable[[np.ndarray], Callable[[OptionQuote], float]],
    param_box: Sequence[tuple[float, float]],
    settings: CalibrationSettings = CalibrationSettings(),
) -> GenericCalibrationResult:
    """Same driver over an arbitrary parameter vector.

    `pricer(params)` returns a function pricing a single quote; the boundary
    is honored by clipping, so a truth outside the box lands on its edge.
    """
    if not quotes:
        raise QuoteError("no quotes")
    if any(b[0] > b[1] for b in param_box):
        raise ValueError("param_box bounds must be ordered")
    degenerate = all(b[0] == b[1] for b in param_box)
    if degenerate:
        point = np.array([b[0] for b in param_box])
        fval = _relative_sq_error(quotes, pricer(point))
        return GenericCalibrationResult(tuple(point), fval, 0, True)
    point, fval, n_iter, converged = _nelder_mead(
        lambda p: _relative_sq_error(quotes, pricer(p)), param_box, settings
    )
    return GenericCalibrationResult(tuple(float(v) for v in point), fval, n_iter, converged)
