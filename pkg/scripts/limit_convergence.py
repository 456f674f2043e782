#!/usr/bin/env python3
"""Convergence of N-fold self-convolutions toward their limit distributions.

For the Poisson-type triangular family the scaled one-row moments are exact
at every N; the N-fold convolution moments approach the limit at rate 1/N.
Prints a table of max-abs moment errors and consecutive-decade ratios.
"""

import argparse
from fractions import Fraction

from bifree.cumulants import cumulants_to_moments
from bifree.limits import (bifree_poisson, compound_bifree_poisson,
                           compound_family, poisson_family, row_sum_moments)
from bifree.measures import DiscretePlanarMeasure


def error_table(label, family, limit_table, n_values, degree):
    limit = cumulants_to_moments(limit_table)
    print(f"\n{label} (moments to total degree {degree})")
    print(f"{'N':>8}  {'max |error|':>14}  {'ratio':>8}")
    previous = None
    for n_rows in n_values:
        approx = row_sum_moments(family, n_rows, degree)
        worst = max(abs(float(approx.get(m, n) - limit.get(m, n)))
                    for (m, n) in limit.entries)
        ratio = f"{previous / worst:8.2f}" if previous and worst else "       -"
        print(f"{n_rows:>8}  {worst:>14.3e}  {ratio}")
        previous = worst


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--degree", type=int, default=5)
    parser.add_argument("--decades", type=int, default=3)
    args = parser.parse_args()

    n_values = [10**k for k in range(1, args.decades + 1)]

    lam, alpha, beta = Fraction(3, 2), Fraction(1), Fraction(1, 2)
    error_table(f"Poisson family, rate {lam}, jump ({alpha}, {beta})",
                poisson_family(lam, alpha, beta),
                bifree_poisson(lam, alpha, beta, args.degree),
                n_values, args.degree)

    jump = DiscretePlanarMeasure.from_atoms(
        [(1, 1, Fraction(1, 2)), (-1, 2, Fraction(1, 2))])
    error_table("compound family, rate 1, two-atom jump",
                compound_family(Fraction(1), jump),
                compound_bifree_poisson(Fraction(1), jump, args.degree),
                n_values, args.degree)


if __name__ == "__main__":
    main()
