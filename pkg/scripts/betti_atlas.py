"""Betti atlas: homology tables for every built-in algebra family.

Prints Hochschild, bar, and cyclic-quotient Betti numbers side by side for
each small algebra the package ships, all computed in exact rational
arithmetic. Handy as a smoke test and as a reference table when checking a
new builder against known answers.

Usage: python3 scripts/betti_atlas.py [--max-degree D]
"""

import argparse

from exacthom.assoc_homology import (bar_complex, connes_quotient_complex,
                                     cyclic_group_algebra, direct_sum,
                                     dual_numbers, field_q,
                                     hochschild_complex, left_unital_two_dim,
                                     matrix_algebra, truncated_polynomials,
                                     zero_multiplication)
from exacthom.complexes import betti_numbers


def families():
    return [("Q", field_q()),
            ("Q[eps]/(eps^2)", dual_numbers()),
            ("Q[t]/(t^3)", truncated_polynomials(3)),
            ("M_2(Q)", matrix_algebra(2)),
            ("Q[Z/3]", cyclic_group_algebra(3)),
            ("zero mult, dim 2", zero_multiplication(2)),
            ("left-unital {e,x}", left_unital_two_dim()),
            ("Q x Q", direct_sum(field_q(), field_q()))]


def fmt(betti):
    return "(" + ", ".join(str(b) for b in betti) + ")"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-degree", type=int, default=3)
    args = ap.parse_args()
    d = args.max_degree
    header = f"{'algebra':<20} {'dim':>3} {'unital':>6}  " \
             f"{'Hochschild':<16} {'bar':<16} {'cyclic quotient':<16}"
    print(header)
    print("-" * len(header))
    for label, a in families():
        hh = betti_numbers(hochschild_complex(a, d))
        bar = betti_numbers(bar_complex(a, d))
        conn = betti_numbers(connes_quotient_complex(a, d)[0])
        print(f"{label:<20} {a.dim:>3} {str(a.is_unital):>6}  "
              f"{fmt(hh):<16} {fmt(bar):<16} {fmt(conn):<16}")
    print(f"\n(top degree {d} is a truncation upper bound, "
          f"lower degrees are exact)")


if __name__ == "__main__":
    main()
