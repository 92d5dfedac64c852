"""Shared test oracles, deliberately independent of the library internals."""

import math

import numpy as np
import pytest

# one-line verdicts accumulated by the acceptance tests; echoed after the
# run so they survive output capture
acceptance_lines = []


def pytest_terminal_summary(terminalreporter):
    for line in acceptance_lines:
        terminalreporter.write_line(line)


def bisect_root(f, lo, hi, iters=200):
    """Plain bisection; independent cross-check for find_root results."""
    flo = f(lo)
    assert flo * f(hi) <= 0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if flo * f(mid) <= 0:
            hi = mid
        else:
            lo = mid
            flo = f(lo)
    return 0.5 * (lo + hi)


def norm_cdf(z):
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def black_scholes_call(S, K, r, sigma, tau, div_yield=0.0):
    """Textbook closed form, written independently of the package."""
    sq = sigma * math.sqrt(tau)
    d1 = (math.log(S / K) + (r - div_yield + 0.5 * sigma**2) * tau) / sq
    d2 = d1 - sq
    return S * math.exp(-div_yield * tau) * norm_cdf(d1) - K * math.exp(
        -r * tau
    ) * norm_cdf(d2)


def ks_statistic(samples, cdf):
    xs = np.sort(np.asarray(samples))
    n = len(xs)
    us = np.array([cdf(float(x)) for x in xs])
    grid = np.arange(1, n + 1) / n
    return float(max(np.abs(grid - us).max(), np.abs(us - (grid - 1.0 / n)).max()))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
