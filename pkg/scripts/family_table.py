"""Tabulate the cyclic-times-quadratic family for a range of g."""

import argparse

from cmtorus.classify import family_types
from cmtorus.cmtype import CMFactor, essentially_equal, is_primitive
from cmtorus.errors import UnsupportedG
from cmtorus.mtgroup import PairInput, pair_analysis


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-g", type=int, default=15)
    args = ap.parse_args()

    print(f"{'g':>3} {'r':>3} {'prim':>5} {'diff':>5} {'dims':>12}  pi1/pi2")
    for g in range(1, args.max_g + 1):
        try:
            f = family_types(g)
        except UnsupportedG:
            continue
        a = pair_analysis(PairInput(f.group, 1, CMFactor(f.primal1), CMFactor(f.primal2)))
        prim = is_primitive(f.primal1) and is_primitive(f.primal2)
        diff = essentially_equal(f.primal1, f.primal2) is None
        dims = f"{a.dim_mt_1},{a.dim_mt_2},{a.dim_mt_product}"
        print(f"{g:>3} {f.r:>3} {prim!s:>5} {diff!s:>5} {dims:>12}  "
              f"{a.status_pi1.value}/{a.status_pi2.value}")


if __name__ == "__main__":
    main()
