"""European call prices under the two exponential-Levy models.

Solves the Esscher martingale tilt for the logistic model, reports the
risk-neutral location for the negative-Gumbel model, and prints a strike
ladder of call prices for both.
"""

import math

import numpy as np

from greedfear import (
    Call,
    EuropeanClaim,
    LevyMarket,
    LogisticLevy,
    NegGumbelLevy,
    neggumbel_rn_location,
    price_call_logistic,
    price_ecc_neggumbel,
    solve_martingale_h,
)


def main():
    spot, r, maturity = 100.0, 0.03, 1.0
    logistic = LevyMarket(LogisticLevy(m=0.05, rho=0.15), spot, r)
    neggumbel = LevyMarket(NegGumbelLevy(mu=0.10, rho=0.5), spot, r)

    sol = solve_martingale_h(logistic)
    print(f"logistic Esscher tilt h_q = {sol.h_q:.12f} (residual {sol.residual:.1e})")
    mu_q = neggumbel_rn_location(r, neggumbel.model.rho)
    print(f"negative-Gumbel risk-neutral location mu_q = {mu_q:.12f}")
    print()

    print("strike   logistic call   neg-Gumbel call   intrinsic")
    for strike in np.linspace(80, 120, 9):
        c_log = price_call_logistic(logistic, float(strike), maturity)
        c_ng = price_ecc_neggumbel(
            neggumbel, EuropeanClaim(Call(float(strike)), maturity)
        )
        intrinsic = max(0.0, spot - strike * math.exp(-r * maturity))
        print(f"{strike:6.1f}   {c_log:13.6f}   {c_ng:15.6f}   {intrinsic:9.6f}")


if __name__ == "__main__":
    main()
