"""Exhaustive enumeration campaigns over CM data.

* :func:`classify_threefolds` loops over the four Galois groups a sextic CM
  field can have, every pair of index-6 subgroups avoiding complex conjugation
  and every pair of CM types, and checks that equal Mumford-Tate dimensions
  force the two factors to be isogenous.
* :func:`search_pairs` looks for pairs of CM types whose projections are
  isomorphisms (or isogenies).
* :func:`family_types` builds the two cyclic-times-quadratic CM types of
  arbitrary dimension ``g``; :func:`verify_shioda` checks the Jacobian of
  ``y^2 = x^9 - 1`` example.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .cmtype import (
    CMFactor,
    CMType,
    enumerate_cm_types,
    essentially_equal,
    is_primitive,
    reflex,
    transport,
    validate_cm_type,
)
from .errors import UnsupportedG
from .groups import (
    FiniteGroup,
    GroupSpec,
    Subgroup,
    are_conjugate,
    central_involutions,
    conjugate_subgroup,
    direct_product,
    from_table,
    make_group,
    make_subgroup,
    right_cosets,
    subgroups_of_order,
    trivial_subgroup,
)
from .mtgroup import PairInput, Status, pair_analysis
from .zlattice import IntMatrix, SpanKind, span_status

THREEFOLD_GROUPS = ("cyclic(6)", "dihedral(6)", "c2_times(A4)", "c2_times(S4)")


@dataclass(frozen=True)
class ClassificationRecord:
    group: str
    H1: tuple[int, ...]
    H2: tuple[int, ...]
    phi1: tuple[int, ...]  # coset representatives
    phi2: tuple[int, ...]
    dims: tuple[int, int, int]  # (dim MT(A1), dim MT(A2), dim MT(A1 x A2))
    statuses: tuple[str, str]
    primitive: tuple[bool, bool]
    conjugator: int | None
    isogenous: bool  # conjugate subgroups and essentially equal transported types

    @property
    def equal_dims(self) -> bool:
        return self.dims[0] == self.dims[1] == self.dims[2]

    @property
    def violation(self) -> bool:
        return self.equal_dims and not self.isogenous

    def to_json(self) -> dict:
        d = asdict(self)
        for k in ("H1", "H2", "phi1", "phi2", "dims", "statuses", "primitive"):
            d[k] = list(d[k])
        return d

    @classmethod
    def from_json(cls, d: dict) -> "ClassificationRecord":
        return cls(
            group=d["group"],
            H1=tuple(d["H1"]),
            H2=tuple(d["H2"]),
            phi1=tuple(d["phi1"]),
            phi2=tuple(d["phi2"]),
            dims=tuple(d["dims"]),
            statuses=tuple(d["statuses"]),
            primitive=tuple(d["primitive"]),
            conjugator=d["conjugator"],
            isogenous=d["isogenous"],
        )


def isogeny_witness(t1: CMType, t2: CMType) -> tuple[int | None, bool]:
    """``(g, ok)``: ``g`` conjugates ``H1`` onto ``H2`` (or None), ``ok`` iff the
    transported type is essentially equal to ``t2``.

    The answer does not depend on which conjugator is used: two conjugators
    differ by an element of the normalizer of ``H2``, i.e. by an automorphism.
    """
    G = t1.group
    g = are_conjugate(G, t1.subgroup, t2.subgroup)
    if g is None:
        return None, False
    moved = transport(t1, g, t2.subgroup)
    return g, essentially_equal(moved, t2) is not None


def make_record(group_name: str, rho: int, t1: CMType, t2: CMType) -> ClassificationRecord:
    a = pair_analysis(PairInput(t1.group, rho, CMFactor(t1), CMFactor(t2)))
    g, ok = isogeny_witness(t1, t2)
    return ClassificationRecord(
        group=group_name,
        H1=t1.subgroup.elems,
        H2=t2.subgroup.elems,
        phi1=tuple(t1.space.cosets[c][0] for c in t1.phi),
        phi2=tuple(t2.space.cosets[c][0] for c in t2.phi),
        dims=(a.dim_mt_1, a.dim_mt_2, a.dim_mt_product),
        statuses=(a.status_pi1.value, a.status_pi2.value),
        primitive=(is_primitive(t1), is_primitive(t2)),
        conjugator=g,
        isogenous=ok,
    )


def record_types(rec: ClassificationRecord, G: FiniteGroup, rho: int) -> tuple[CMType, CMType]:
    """Rebuild the two CM types described by a record."""
    out = []
    for H, phi in ((rec.H1, rec.phi1), (rec.H2, rec.phi2)):
        space = right_cosets(G, make_subgroup(G, H))
        out.append(validate_cm_type(space, {space.coset_of[x] for x in phi}, rho))
    return out[0], out[1]


def revalidate(rec: ClassificationRecord) -> bool:
    """True iff a fresh analysis of the record's tuple reproduces it."""
    G = make_group(rec.group)
    rho = central_involutions(G)[0].elem
    t1, t2 = record_types(rec, G, rho)
    return make_record(rec.group, rho, t1, t2) == rec


# ---------------------------------------------------------------------------
# symmetry reduction


def factor_orbits(
    G: FiniteGroup, rho: int, subgroups: list[Subgroup]
) -> list[tuple[CMType, int]]:
    """Orbit representatives of ``(H, Phi)`` under transport by all of ``G``.

    Transport includes precomposition with automorphisms (in particular complex
    conjugation), so each orbit is one isomorphism class of CM pair. Returns
    ``(representative, orbit size)`` in canonical order.
    """
    allowed = {H.elems for H in subgroups}
    seen: set[tuple] = set()
    out = []
    for H in subgroups:
        for t in enumerate_cm_types(right_cosets(G, H), rho):
            key = (t.subgroup.elems, t.phi)
            if key in seen:
                continue
            orbit = set()
            for g in G.elements:
                H2 = conjugate_subgroup(G, t.subgroup, g)
                if H2.elems not in allowed:
                    continue
                moved = transport(t, g, H2)
                orbit.add((H2.elems, moved.phi))
            seen |= orbit
            out.append((t, len(orbit)))
    return out


def reduced_pairs(
    G: FiniteGroup, rho: int, subgroups: list[Subgroup]
) -> list[tuple[CMType, CMType, int]]:
    """Pairs of orbit representatives up to factor swap, with the number of
    ordered tuples each one stands for."""
    reps = factor_orbits(G, rho, subgroups)
    out = []
    for (i, (t1, n1)), (j, (t2, n2)) in itertools.combinations_with_replacement(enumerate(reps), 2):
        out.append((t1, t2, n1 * n2 * (1 if i == j else 2)))
    return out


# ---------------------------------------------------------------------------
# threefold campaign


@dataclass
class GroupSummary:
    group: str
    order: int
    rho: int
    subgroups: int
    cm_types_per_subgroup: int
    tuples: int = 0
    equal_dims: int = 0
    violations: int = 0
    primitive_single_dims: list[int] = field(default_factory=list)
    nonprimitive_single_dims: list[int] = field(default_factory=list)


@dataclass
class CampaignReport:
    groups: list[GroupSummary]
    total_tuples: int
    equal_dims: int
    violations: int
    records: list[ClassificationRecord]
    settings: dict
    elapsed_seconds: float = 0.0

    def to_json(self, include_timing: bool = False) -> dict:
        out = {
            "settings": self.settings,
            "total_tuples": self.total_tuples,
            "equal_dims": self.equal_dims,
            "violations": self.violations,
            "groups": [asdict(g) for g in self.groups],
            "records": [r.to_json() for r in self.records],
        }
        if include_timing:
            out["elapsed_seconds"] = round(self.elapsed_seconds, 3)
        return out


def _threefold_setup(name: str):
    G = make_group(name)
    rho = central_involutions(G)[0].elem
    subs = subgroups_of_order(G, G.order // 6, excluding=rho)
    return G, rho, subs


def _run_block(args: tuple[str, int, int]) -> list[ClassificationRecord]:
    name, i, j = args
    G, rho, subs = _threefold_setup(name)
    T1 = enumerate_cm_types(right_cosets(G, subs[i]), rho)
    T2 = enumerate_cm_types(right_cosets(G, subs[j]), rho)
    return [make_record(name, rho, t1, t2) for t1 in T1 for t2 in T2]


def classify_threefolds(
    groups: list[str] | None = None,
    jobs: int = 1,
    full_records: bool = False,
    reduce_symmetry: bool = False,
) -> CampaignReport:
    """Check that equal Mumford-Tate dimensions force isogenous CM threefolds.

    A tuple ``(H1, H2, Phi1, Phi2)`` is a violation when all three dimensions
    agree but ``H1, H2`` are not conjugate, or the transported types are
    essentially different.
    """
    start = time.perf_counter()
    names = list(groups) if groups else list(THREEFOLD_GROUPS)
    for n in names:
        make_group(n)  # fail early on bad names
    summaries, records = [], []
    total = eq = viol = 0

    for name in names:
        G, rho, subs = _threefold_setup(name)
        summary = GroupSummary(name, G.order, rho, len(subs), 2**3)

        if reduce_symmetry:
            weighted = [(make_record(name, rho, t1, t2), w) for t1, t2, w in reduced_pairs(G, rho, subs)]
        else:
            tasks = [(name, i, j) for i in range(len(subs)) for j in range(len(subs))]
            if jobs > 1 and len(tasks) > 1:
                with ProcessPoolExecutor(max_workers=jobs) as ex:
                    blocks = list(ex.map(_run_block, tasks))
            else:
                blocks = [_run_block(t) for t in tasks]
            weighted = [(r, 1) for b in blocks for r in b]

        prim_dims, nonprim_dims = set(), set()
        for rec, w in weighted:
            summary.tuples += w
            for k in (0, 1):
                (prim_dims if rec.primitive[k] else nonprim_dims).add(rec.dims[k])
            if rec.equal_dims:
                summary.equal_dims += w
            if rec.violation:
                summary.violations += w
            if rec.violation or full_records:
                records.append(rec)
        summary.primitive_single_dims = sorted(prim_dims)
        summary.nonprimitive_single_dims = sorted(nonprim_dims)
        summaries.append(summary)
        total += summary.tuples
        eq += summary.equal_dims
        viol += summary.violations

    settings = {"groups": names, "full_records": full_records, "reduce_symmetry": reduce_symmetry}
    return CampaignReport(summaries, total, eq, viol, records, settings,
                          time.perf_counter() - start)


# ---------------------------------------------------------------------------
# searches for iso-Kummerian candidates


def search_pairs(
    G: FiniteGroup,
    rho: int,
    H1: Subgroup,
    H2: Subgroup,
    mode: Status = Status.ISO,
    primitive: bool = False,
    essentially_different: bool = False,
    group_name: str | None = None,
) -> list[ClassificationRecord]:
    """All CM-type pairs on ``H1\\G x H2\\G`` whose two projections are at least ``mode``."""
    rho = int(rho)
    T1 = enumerate_cm_types(right_cosets(G, H1), rho)
    T2 = enumerate_cm_types(right_cosets(G, H2), rho)
    if primitive:
        T1 = [t for t in T1 if is_primitive(t)]
        T2 = [t for t in T2 if is_primitive(t)]
    name = group_name or G.name
    out = []
    for t1 in T1:
        for t2 in T2:
            if essentially_different and isogeny_witness(t1, t2)[1]:
                continue
            rec = make_record(name, rho, t1, t2)
            if all(Status(s).at_least(mode) for s in rec.statuses):
                out.append(rec)
    return out


# ---------------------------------------------------------------------------
# the cyclic-times-quadratic family


@dataclass(frozen=True)
class FamilyTypes:
    g: int
    r: int
    h: int
    group: FiniteGroup
    dual1: CMType
    dual2: CMType
    primal1: CMType
    primal2: CMType

    def sigma(self, i: int) -> int:
        return 2 * (i % self.g)

    def sigma_bar(self, i: int) -> int:
        return 2 * (i % self.g) + 1


def smallest_prime_not_dividing(g: int) -> int:
    p = 2
    while True:
        if all(p % d for d in range(2, int(p**0.5) + 1)) and g % p:
            return p
        p += 1


def family_group(g: int) -> FiniteGroup:
    """``Z/g x Z/2`` with ``sigma_i`` at index ``2i`` and ``sigma_i-bar`` at ``2i+1``."""
    base = direct_product(make_group(GroupSpec("cyclic", n=g)), make_group(GroupSpec("cyclic", n=2)))
    labels = [f"σ{i}" if b == 0 else f"σ̄{i}" for i in range(g) for b in range(2)]
    return from_table(base.mul, labels, f"cyclic({g})xcyclic(2)")


def family_types(g: int) -> FamilyTypes:
    """Dual CM types ``{sigma_i-bar : i < r} u {sigma_i : r <= i < g}`` and the same with
    indices scaled by ``h``, for ``r = h`` the smallest prime not dividing ``g``.

    Primal types are recovered as reflexes of the duals.

    Raises:
        UnsupportedG: ``g`` in ``{1, 2, 3, 4, 6}`` (or non-positive).
    """
    if g < 1 or g in (1, 2, 3, 4, 6):
        raise UnsupportedG(f"the family is defined for g not in {{1, 2, 3, 4, 6}}, got {g}", field="g")
    r = h = smallest_prime_not_dividing(g)
    G = family_group(g)
    rho = 1  # (0, 1), the generator of the quadratic factor
    space = right_cosets(G, trivial_subgroup(G))

    def sig(i, bar):
        return 2 * (i % g) + bar

    d1 = [sig(i, 1) for i in range(r)] + [sig(i, 0) for i in range(r, g)]
    d2 = [sig(h * i, 1) for i in range(r)] + [sig(h * i, 0) for i in range(r, g)]
    dual1 = validate_cm_type(space, {space.coset_of[x] for x in d1}, rho)
    dual2 = validate_cm_type(space, {space.coset_of[x] for x in d2}, rho)
    primal1 = reflex(dual1).reflex_type
    primal2 = reflex(dual2).reflex_type
    return FamilyTypes(g, r, h, G, dual1, dual2, primal1, primal2)


# ---------------------------------------------------------------------------
# Jacobian of y^2 = x^9 - 1


SHIODA_MATRIX = (
    (1, 1, 1, 0, 0, 0, 1, 0),
    (0, 1, 1, 0, 0, 1, 0, 1),
    (0, 0, 1, 0, 1, 1, 1, 0),
    (1, 1, 0, 1, 0, 0, 0, 1),
    (1, 0, 0, 1, 1, 0, 1, 0),
    (0, 0, 0, 1, 1, 1, 0, 1),
)
SHIODA_KERNEL_VECTORS = (
    (0, 0, 1, 0, 1, -1, -1, 0),
    (0, 0, 0, 1, -1, 1, 0, -1),
)
SHIODA_REFLEX = ("σ1", "σ5", "σ7")


def shioda_input() -> PairInput:
    """``X`` with CM by Q(zeta_9), type {s1, s2, s4}; ``E`` with CM by Q(zeta_3)."""
    G = make_group(GroupSpec("unit_group_mod", n=9))
    rho = G.labels.index("σ8")
    X = validate_cm_type(
        right_cosets(G, trivial_subgroup(G)), [G.labels.index(s) for s in ("σ1", "σ2", "σ4")], rho
    )
    H = make_subgroup(G, ["σ1", "σ4", "σ7"])
    E_space = right_cosets(G, H)
    E = validate_cm_type(E_space, [E_space.coset_of[G.labels.index("σ1")]], rho)
    return PairInput(G, rho, CMFactor(X, "X"), CMFactor(E, "E"))


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ShiodaReport:
    checks: list[Check]
    dim_mt_x: int
    dim_mt_e: int
    dim_mt_product: int
    status_pi1: str
    status_pi2: str
    matrix: IntMatrix

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [asdict(c) for c in self.checks],
            "dim_mt_x": self.dim_mt_x,
            "dim_mt_e": self.dim_mt_e,
            "dim_mt_product": self.dim_mt_product,
            "status_pi1": self.status_pi1,
            "status_pi2": self.status_pi2,
            "matrix": self.matrix.to_json(),
        }


def verify_shioda() -> ShiodaReport:
    p = shioda_input()
    a = pair_analysis(p)
    M = a.matrix
    X = p.factor1.cm_type
    star = reflex(X).reflex_type.rep_labels()
    checks = [
        Check("reflex_type", tuple(star) == SHIODA_REFLEX, "{" + ", ".join(star) + "}"),
        Check("matrix", M.data == SHIODA_MATRIX, f"{M.rows}x{M.cols}"),
    ]
    images = [M.apply(v) for v in SHIODA_KERNEL_VECTORS]
    checks.append(Check("kernel_vectors", all(not any(im) for im in images),
                        "; ".join(str(list(im)) for im in images)))
    n = M.cols
    block = tuple(tuple(int(j == i) for j in range(n)) for i in range(p.factor1.space.size))
    st = span_status(IntMatrix(len(block) + 2, n, block + SHIODA_KERNEL_VECTORS), n)
    checks.append(Check("vectors_span", st.kind is SpanKind.FULL, f"{st.kind.value}, rank {st.rank}"))
    checks.append(Check("pi1_iso", a.status_pi1 is Status.ISO,
                        f"{a.status_pi1.value}, dim MT(X x E) = {a.dim_mt_product}"))
    return ShiodaReport(checks, a.dim_mt_1, a.dim_mt_2, a.dim_mt_product,
                        a.status_pi1.value, a.status_pi2.value, M)
