"""Run the exhaustive threefold campaign and write the JSON report.

    python3 scripts/run_classification.py --jobs 4 --out results/threefolds.json
"""

import argparse
import json
from pathlib import Path

from cmtorus.classify import THREEFOLD_GROUPS, classify_threefolds


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--groups", default=",".join(THREEFOLD_GROUPS))
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--reduce-symmetry", action="store_true")
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()

    rep = classify_threefolds(args.groups.split(","), jobs=args.jobs,
                              reduce_symmetry=args.reduce_symmetry)
    for s in rep.groups:
        print(f"{s.group:14s} subgroups={s.subgroups:3d} tuples={s.tuples:5d} "
              f"equal_dims={s.equal_dims:4d} violations={s.violations} "
              f"dims(primitive)={s.primitive_single_dims} dims(other)={s.nonprimitive_single_dims}")
    print(f"total {rep.total_tuples} tuples, {rep.violations} violations, "
          f"{rep.elapsed_seconds:.1f}s")
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(json.dumps(rep.to_json(include_timing=True), indent=2) + "\n")


if __name__ == "__main__":
    main()
