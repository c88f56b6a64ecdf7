"""Count primitive, essentially different CM-type pairs with both projections ISO
on cyclic groups of order 2g (H trivial)."""

import argparse

from cmtorus.classify import search_pairs
from cmtorus.groups import GroupSpec, make_group, trivial_subgroup
from cmtorus.mtgroup import Status


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--g", type=int, nargs="+", default=[3, 4, 5, 6])
    ap.add_argument("--mode", choices=("iso", "isogeny"), default="iso")
    ap.add_argument("--show", type=int, default=3, help="pairs to print per g")
    args = ap.parse_args()
    mode = Status.ISO if args.mode == "iso" else Status.ISOGENY

    for g in args.g:
        G = make_group(GroupSpec("cyclic", n=2 * g))
        H = trivial_subgroup(G)
        recs = search_pairs(G, g, H, H, mode, primitive=True, essentially_different=True)
        print(f"g={g}: {len(recs)} ordered pairs")
        for r in recs[: args.show]:
            print("   ", [G.labels[x] for x in r.phi1], [G.labels[x] for x in r.phi2], r.dims)


if __name__ == "__main__":
    main()
