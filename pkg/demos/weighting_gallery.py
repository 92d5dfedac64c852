"""Gallery of probability weighting functions and their dispositions.

Prints a small w(u) table for the classic parameterizations and shows how
composition of two return cdfs collapses to a closed form when one exists.
"""

import numpy as np

from greedfear import (
    Gumbel,
    ModifiedPrelec,
    NegGumbel,
    Prelec,
    TKWeight,
    classify_disposition,
    eval_wpf,
    specialize_wpf,
    wpf_from_cdfs,
)


def main():
    us = np.array([0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99])
    gallery = [
        ("TK gamma=0.61", TKWeight(0.61)),
        ("Prelec delta=1 rho=0.65", Prelec(1.0, 0.65)),
        ("Modified Prelec delta=1.2 rho=0.8", ModifiedPrelec(1.2, 0.8)),
    ]
    header = "u:        " + "  ".join(f"{u:7.2f}" for u in us)
    print(header)
    for name, w in gallery:
        vals = "  ".join(f"{eval_wpf(w, float(u)):7.4f}" for u in us)
        print(f"{name:34s}{vals}  [{classify_disposition(w)}]")

    print()
    print("Composed Gumbel -> Gumbel weights specialize to a Prelec form:")
    prior, post = Gumbel(0.0, 0.5), Gumbel(0.3, 0.5)
    composed = wpf_from_cdfs(prior, post)
    special = specialize_wpf(prior, post)
    for u in (0.1, 0.5, 0.9):
        print(
            f"  u={u:.1f}: generic {eval_wpf(composed, u):.10f}"
            f"  closed-form {eval_wpf(special, u):.10f}"
        )

    print()
    print("Negative-Gumbel priors stay in family under the modified Prelec:")
    prior, post = NegGumbel(0.0, 1.0), NegGumbel(-0.4, 1.25)
    print(f"  {specialize_wpf(prior, post)}")


if __name__ == "__main__":
    main()
