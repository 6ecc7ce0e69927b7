#!/usr/bin/env python3
"""Reproduce the S-matrix rank-bound analysis for small odd root orders.

For each ell the fusion involution on the ell(ell-1) simple labels pairs rows
of the S-matrix up to the factor -u^2, so the rank is at most ell(ell-1)/2 and
the category cannot be relative modular.
"""

import sys

sys.path.insert(0, "src")

from relmod.sl21 import rank_bound_analysis  # noqa: E402


def main(orders=(3, 5, 7)):
    for ell in orders:
        rep = rank_bound_analysis(ell)
        print(f"ell = {ell}")
        print(f"  S-matrix size : {rep.matrix_size} x {rep.matrix_size}")
        print(f"  paired rows   : {rep.bound} classes, factor {rep.proportionality_factor}")
        print(f"  fixed-point-free involution: {rep.fixed_point_free}")
        print(f"  verdict       : {rep.verdict}")
        for a, b in rep.classes:
            print(f"    {a} <-> {b}")
        print()


if __name__ == "__main__":
    orders = tuple(int(a) for a in sys.argv[1:]) or (3, 5, 7)
    main(orders)
