"""Command-line interface.

Exit codes: 0 success, 1 a check or campaign failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import classify
from .cmtype import is_primitive, reflex
from .errors import InputError
from .groups import GroupSpec, make_group
from .jsonio import (
    cm_type_json,
    parse_pair_input,
    parse_reflex_input,
    parse_search_input,
)
from .mtgroup import Status, pair_analysis


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "text"), default="text")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cmtorus", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _common()

    p = sub.add_parser("reflex", parents=[common], help="reflex group and type of a CM type")
    p.add_argument("--input", required=True)

    p = sub.add_parser("pair", parents=[common], help="analyse a pair of CM abelian varieties")
    p.add_argument("--input", required=True)

    p = sub.add_parser("classify-threefolds", parents=[common],
                       help="exhaustive check over sextic CM data")
    p.add_argument("--groups", help="comma-separated subset, e.g. 'cyclic(6),dihedral(6)'")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--full-records", action="store_true")
    p.add_argument("--reduce-symmetry", action="store_true")
    p.add_argument("--timing", action="store_true", help="include wall-clock time in the report")

    p = sub.add_parser("search", parents=[common], help="search CM-type pairs on fixed subgroups")
    p.add_argument("--input", required=True)
    p.add_argument("--mode", choices=("iso", "isogeny"), default="iso")
    p.add_argument("--primitive", action="store_true")
    p.add_argument("--essentially-different", action="store_true")

    p = sub.add_parser("family", parents=[common], help="CM types of the Z/g x Z/2 family")
    p.add_argument("--g", type=int, required=True)

    sub.add_parser("verify-shioda", parents=[common], help="check the y^2 = x^9 - 1 example")
    return parser


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}", field="--input") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}", field="--input") from None


# ---------------------------------------------------------------------------
# text rendering


def _table(headers: list[str], rows: list[list]) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _kv(d: dict) -> str:
    w = max(len(k) for k in d)
    return "\n".join(f"{k.ljust(w)}  {v}" for k, v in d.items())


def _fmt_matrix(m: dict) -> str:
    rows = m["data"]
    if not rows:
        return "  (empty)"
    w = max(len(x) for r in rows for x in r)
    return "\n".join("  [" + " ".join(x.rjust(w) for x in r) + "]" for r in rows)


def _text_reflex(d: dict) -> str:
    return _kv({
        "g": d["g"],
        "primitive": d["primitive"],
        "phi": "{" + ", ".join(d["cm_type"]["phi_labels"]) + "}",
        "reflex group": "{" + ", ".join(d["reflex"]["reflex_group_labels"]) + "}",
        "reflex type": "{" + ", ".join(d["reflex"]["reflex_type_labels"]) + "}",
        "reflex lift": "{" + ", ".join(d["reflex"]["lift_inverse_labels"]) + "}",
    })


def _text_pair(d: dict) -> str:
    a = d["analysis"]
    rows = [
        [d["labels"][0], a["dim_mt_1"], a["dim_hg_1"], a["status_pi1"], a["index_pi1"]],
        [d["labels"][1], a["dim_mt_2"], a["dim_hg_2"], a["status_pi2"], a["index_pi2"]],
        ["product", a["dim_mt_product"], a["dim_hg_product"], "", ""],
    ]
    out = [_table(["factor", "dim MT", "dim Hg", "projection", "index"], rows)]
    out.append(f"\nkernel rank {a['kernel_rank']}")
    out.append("matrix:\n" + _fmt_matrix(a["matrix"]))
    out.append("kernel basis:\n" + _fmt_matrix(a["kernel"]))
    return "\n".join(out)


def _record_rows(records: list[dict]) -> list[list]:
    return [
        [r["group"], r["H1"], r["H2"], r["phi1"], r["phi2"], r["dims"],
         "/".join(r["statuses"]), r["conjugator"], r["isogenous"]]
        for r in records
    ]


_RECORD_HEADERS = ["group", "H1", "H2", "phi1", "phi2", "dims", "pi1/pi2", "conj", "isogenous"]


def _text_classify(d: dict) -> str:
    rows = [
        [g["group"], g["order"], g["subgroups"], g["tuples"], g["equal_dims"], g["violations"],
         g["primitive_single_dims"], g["nonprimitive_single_dims"]]
        for g in d["groups"]
    ]
    out = [_table(["group", "|G|", "subgroups", "tuples", "equal dims", "violations",
                   "dims (primitive)", "dims (non-primitive)"], rows)]
    out.append("")
    out.append(_kv({"total tuples": d["total_tuples"], "equal dims": d["equal_dims"],
                    "violations": d["violations"]}))
    if "elapsed_seconds" in d:
        out.append(f"elapsed  {d['elapsed_seconds']} s")
    if d["records"]:
        out.append("\n" + _table(_RECORD_HEADERS, _record_rows(d["records"])))
    return "\n".join(out)


def _text_search(d: dict) -> str:
    head = f"{d['count']} pair(s) found"
    if not d["records"]:
        return head
    rows = [[r["phi1_labels"], r["phi2_labels"], r["dims"], "/".join(r["statuses"])]
            for r in d["records"]]
    return head + "\n" + _table(["phi1", "phi2", "dims", "pi1/pi2"], rows)


def _text_family(d: dict) -> str:
    a = d["analysis"]
    return _kv({
        "g": d["g"],
        "r = h": d["r"],
        "dual type 1": "{" + ", ".join(d["dual1"]["phi_labels"]) + "}",
        "dual type 2": "{" + ", ".join(d["dual2"]["phi_labels"]) + "}",
        "type 1": "{" + ", ".join(d["primal1"]["phi_labels"]) + "}",
        "type 2": "{" + ", ".join(d["primal2"]["phi_labels"]) + "}",
        "primitive": d["primitive"],
        "essentially different": d["essentially_different"],
        "dims (MT1, MT2, MT12)": [a["dim_mt_1"], a["dim_mt_2"], a["dim_mt_product"]],
        "pi1 / pi2": f"{a['status_pi1']} / {a['status_pi2']}",
    })


def _text_shioda(d: dict) -> str:
    rows = [[c["name"], "PASS" if c["passed"] else "FAIL", c["detail"]] for c in d["checks"]]
    out = [_table(["check", "result", "detail"], rows), ""]
    out.append(_kv({"dim MT(X)": d["dim_mt_x"], "dim MT(E)": d["dim_mt_e"],
                    "dim MT(X x E)": d["dim_mt_product"],
                    "pi1 / pi2": f"{d['status_pi1']} / {d['status_pi2']}"}))
    out.append("matrix:\n" + _fmt_matrix(d["matrix"]))
    return "\n".join(out)


# ---------------------------------------------------------------------------
# commands


def cmd_reflex(args) -> tuple[dict, int]:
    t = parse_reflex_input(_load(args.input))
    r = reflex(t)
    d = {"g": t.g, "primitive": is_primitive(t), "cm_type": cm_type_json(t), "reflex": r.to_json()}
    return d, 0


def cmd_pair(args) -> tuple[dict, int]:
    p = parse_pair_input(_load(args.input))
    a = pair_analysis(p)
    d = {"labels": [p.factor1.label, p.factor2.label], "analysis": a.to_json()}
    return d, 0


def cmd_classify(args) -> tuple[dict, int]:
    if args.jobs < 1:
        raise InputError("must be at least 1", field="--jobs")
    groups = [g.strip() for g in args.groups.split(",")] if args.groups else None
    if groups:
        for g in groups:
            make_group(g)
    rep = classify.classify_threefolds(groups, jobs=args.jobs, full_records=args.full_records,
                                       reduce_symmetry=args.reduce_symmetry)
    return rep.to_json(include_timing=args.timing), int(rep.violations > 0)


def cmd_search(args) -> tuple[dict, int]:
    spec, G, rho, H1, H2 = parse_search_input(_load(args.input))
    mode = Status.ISO if args.mode == "iso" else Status.ISOGENY
    recs = classify.search_pairs(G, rho, H1, H2, mode, args.primitive,
                                 args.essentially_different, group_name=str(spec))
    out = []
    for r in recs:
        j = r.to_json()
        j["phi1_labels"] = [G.labels[x] for x in r.phi1]
        j["phi2_labels"] = [G.labels[x] for x in r.phi2]
        out.append(j)
    settings = {"mode": args.mode, "primitive": args.primitive,
                "essentially_different": args.essentially_different}
    return {"settings": settings, "count": len(out), "records": out}, 0


def cmd_family(args) -> tuple[dict, int]:
    from .cmtype import CMFactor, essentially_equal
    from .mtgroup import PairInput

    f = classify.family_types(args.g)
    a = pair_analysis(PairInput(f.group, 1, CMFactor(f.primal1, "A1"), CMFactor(f.primal2, "A2")))
    d = {
        "g": f.g, "r": f.r, "h": f.h,
        "group": GroupSpec("product", factors=(GroupSpec("cyclic", n=f.g),
                                                GroupSpec("cyclic", n=2))).to_json(),
        "dual1": cm_type_json(f.dual1), "dual2": cm_type_json(f.dual2),
        "primal1": cm_type_json(f.primal1), "primal2": cm_type_json(f.primal2),
        "primitive": [is_primitive(f.primal1), is_primitive(f.primal2)],
        "essentially_different": essentially_equal(f.primal1, f.primal2) is None,
        "analysis": a.to_json(include_matrix=False),
    }
    return d, 0


def cmd_verify_shioda(args) -> tuple[dict, int]:
    rep = classify.verify_shioda()
    return rep.to_json(), int(not rep.passed)


COMMANDS = {
    "reflex": (cmd_reflex, _text_reflex),
    "pair": (cmd_pair, _text_pair),
    "classify-threefolds": (cmd_classify, _text_classify),
    "search": (cmd_search, _text_search),
    "family": (cmd_family, _text_family),
    "verify-shioda": (cmd_verify_shioda, _text_shioda),
}


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    run, render = COMMANDS[args.command]
    try:
        data, code = run(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.format == "json":
        text = json.dumps(data, indent=2, ensure_ascii=False)
    else:
        text = render(data)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
