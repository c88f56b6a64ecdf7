"""JSON encodings of groups, CM types and pair inputs.

Elements may be given as indices or as their labels (``"σ4"``). A CM type's
``phi`` lists one element from each chosen coset.
"""

from __future__ import annotations

from typing import Any

from .cmtype import CMFactor, CMType, validate_cm_type
from .errors import InputError
from .groups import FiniteGroup, GroupSpec, Subgroup, make_group, make_subgroup, right_cosets
from .mtgroup import PairInput


def require(obj: Any, key: str, ctx: str = "") -> Any:
    name = f"{ctx}.{key}" if ctx else key
    if not isinstance(obj, dict):
        raise InputError(f"expected an object containing {key!r}", field=ctx or name)
    if key not in obj:
        raise InputError("missing required field", field=name)
    return obj[key]


def parse_group(obj: Any) -> tuple[GroupSpec, FiniteGroup]:
    spec = GroupSpec.from_json(obj)
    return spec, make_group(spec)


def parse_element(G: FiniteGroup, x: Any, field: str) -> int:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InputError(f"expected an element index or label, got {x!r}", field=field)
    try:
        return G.index_of(x)
    except InputError as e:
        raise InputError(str(e), field=field) from None


def parse_subgroup(G: FiniteGroup, obj: Any, field: str) -> Subgroup:
    if not isinstance(obj, list) or not obj:
        raise InputError("expected a non-empty list of elements", field=field)
    elems = [parse_element(G, x, field) for x in obj]
    try:
        return make_subgroup(G, elems)
    except InputError as e:
        raise InputError(e.args[0], field=field) from None


def parse_cm_type(G: FiniteGroup, obj: Any, rho: int, ctx: str = "") -> CMType:
    pre = f"{ctx}." if ctx else ""
    H = parse_subgroup(G, require(obj, "H", ctx), pre + "H")
    phi_raw = require(obj, "phi", ctx)
    if not isinstance(phi_raw, list):
        raise InputError("expected a list of coset representatives", field=pre + "phi")
    space = right_cosets(G, H)
    phi = {space.coset_of[parse_element(G, x, pre + "phi")] for x in phi_raw}
    if len(phi) != len(phi_raw):
        raise InputError("two entries lie in the same coset", field=pre + "phi")
    return validate_cm_type(space, phi, rho)


def parse_reflex_input(obj: Any) -> CMType:
    _, G = parse_group(require(obj, "group"))
    rho = parse_element(G, require(obj, "rho"), "rho")
    return parse_cm_type(G, obj, rho)


def parse_pair_input(obj: Any) -> PairInput:
    _, G = parse_group(require(obj, "group"))
    rho = parse_element(G, require(obj, "rho"), "rho")
    factors = []
    for key in ("factor1", "factor2"):
        f = require(obj, key)
        t = parse_cm_type(G, f, rho, key)
        label = f.get("label", key)
        if not isinstance(label, str):
            raise InputError("label must be a string", field=f"{key}.label")
        factors.append(CMFactor(t, label))
    return PairInput(G, rho, factors[0], factors[1])


def parse_search_input(obj: Any) -> tuple[GroupSpec, FiniteGroup, int, Subgroup, Subgroup]:
    spec, G = parse_group(require(obj, "group"))
    rho = parse_element(G, require(obj, "rho"), "rho")
    H1 = parse_subgroup(G, require(obj, "H1"), "H1")
    H2 = parse_subgroup(G, require(obj, "H2"), "H2")
    for name, H in (("H1", H1), ("H2", H2)):
        if rho in H:
            raise InputError(f"rho lies in {name}", field="rho")
    return spec, G, rho, H1, H2


def cm_type_json(t: CMType, label: str | None = None) -> dict:
    out = t.to_json()
    out["phi_labels"] = t.rep_labels()
    out["H_labels"] = t.subgroup.labels()
    if label is not None:
        out["label"] = label
    return out


def pair_input_json(p: PairInput, spec: GroupSpec) -> dict:
    return {
        "group": spec.to_json(),
        "rho": p.rho,
        "factor1": {**p.factor1.cm_type.to_json(), "label": p.factor1.label},
        "factor2": {**p.factor2.cm_type.to_json(), "label": p.factor2.label},
    }
