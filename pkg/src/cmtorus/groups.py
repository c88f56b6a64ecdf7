"""Finite groups given by multiplication tables.

Elements are the integers ``0..order-1``. Catalog groups use a fixed element
ordering (see :func:`make_group`) so that matrices built from them are
reproducible entry for entry.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .errors import AxiomViolation, InputError, NonDivisorOrder, OrderTooLarge

MAX_ORDER = 96


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A validated finite group. Construct through :func:`from_table` or :func:`make_group`."""

    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    identity: int
    labels: tuple[str, ...]
    name: str = "G"

    @property
    def order(self) -> int:
        return len(self.mul)

    @property
    def elements(self) -> range:
        return range(len(self.mul))

    def m(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def conj(self, g: int, x: int) -> int:
        """``g^-1 x g``."""
        return self.mul[self.mul[self.inv[g]][x]][g]

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.mul[y][x]
            k += 1
        return k

    def index_of(self, label: str | int) -> int:
        """Resolve an element given either as an index or by its label."""
        if isinstance(label, bool):
            raise InputError(f"invalid element {label!r}")
        if isinstance(label, int):
            if not 0 <= label < self.order:
                raise InputError(f"element index {label} out of range for order {self.order}")
            return label
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"unknown element label {label!r}") from None

    @cached_property
    def _subgroup_cache(self) -> dict:
        return {}

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(repr=False)
    elems: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elems)

    def __contains__(self, x: int) -> bool:
        return x in self._members

    def __iter__(self):
        return iter(self.elems)

    def __len__(self) -> int:
        return len(self.elems)

    @cached_property
    def _members(self) -> frozenset[int]:
        return frozenset(self.elems)

    def labels(self) -> list[str]:
        return [self.parent.labels[x] for x in self.elems]


@dataclass(frozen=True)
class CentralInvolution:
    elem: int

    def __int__(self) -> int:
        return self.elem

    def __index__(self) -> int:
        return self.elem


@dataclass(frozen=True)
class CosetSpace:
    """Right cosets ``Hg`` of a subgroup, ordered by their minimal element."""

    group: FiniteGroup = field(repr=False)
    subgroup: Subgroup
    cosets: tuple[tuple[int, ...], ...]
    coset_of: tuple[int, ...] = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.cosets)

    @property
    def reps(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.cosets)

    def rep_labels(self) -> list[str]:
        return [self.group.labels[r] for r in self.reps]


# ---------------------------------------------------------------------------
# construction


def from_table(
    mul: Sequence[Sequence[int]],
    labels: Sequence[str] | None = None,
    name: str = "G",
) -> FiniteGroup:
    """Validate a multiplication table and wrap it as a :class:`FiniteGroup`.

    Raises:
        OrderTooLarge: more than ``MAX_ORDER`` elements.
        AxiomViolation: the table is not a group law.
    """
    n = len(mul)
    if n == 0:
        raise AxiomViolation("empty multiplication table", field="mul")
    if n > MAX_ORDER:
        raise OrderTooLarge(f"group order {n} exceeds {MAX_ORDER}", field="mul")
    table = []
    for i, row in enumerate(mul):
        if len(row) != n:
            raise AxiomViolation(f"row {i} has length {len(row)}, expected {n}", field="mul")
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < n:
                raise AxiomViolation(f"row {i} has entry {x!r} outside 0..{n - 1}", field="mul")
        table.append(tuple(row))

    ids = [e for e in range(n) if all(table[e][x] == x == table[x][e] for x in range(n))]
    if not ids:
        raise AxiomViolation("no identity element", field="mul")
    e = ids[0]

    inv = []
    for a in range(n):
        right = [b for b in range(n) if table[a][b] == e]
        if len(right) != 1 or table[right[0]][a] != e:
            raise AxiomViolation(f"element {a} has no two-sided inverse", field="mul")
        inv.append(right[0])

    for a in range(n):
        ra = table[a]
        for b in range(n):
            rab = table[ra[b]]
            rb = table[b]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    raise AxiomViolation(f"associativity fails on ({a}, {b}, {c})", field="mul")

    if labels is None:
        labels = [str(i) for i in range(n)]
    if len(labels) != n:
        raise InputError(f"{len(labels)} labels for {n} elements", field="labels")
    return FiniteGroup(tuple(table), tuple(inv), e, tuple(labels), name)


def _cyclic(n: int) -> FiniteGroup:
    mul = [[(a + b) % n for b in range(n)] for a in range(n)]
    labels = ["e"] + [f"σ^{k}" if k > 1 else "σ" for k in range(1, n)]
    return from_table(mul, labels, f"cyclic({n})")


def _dihedral(n: int) -> FiniteGroup:
    # element s^a r^b has index a*n + b; r^b s = s r^-b
    def idx(a: int, b: int) -> int:
        return (a % 2) * n + b % n

    mul = []
    for a1, b1 in itertools.product(range(2), range(n)):
        row = []
        for a2, b2 in itertools.product(range(2), range(n)):
            row.append(idx(a1 + a2, (-b1 if a2 else b1) + b2))
        mul.append(row)
    rot = ["e", "r"] + [f"r^{k}" for k in range(2, n)]
    refl = ["s", "sr"] + [f"sr^{k}" for k in range(2, n)]
    return from_table(mul, (rot + refl)[: 2 * n], f"dihedral({n})")


def _symmetric(n: int, even_only: bool = False) -> tuple[list, list[str]]:
    perms = [p for p in itertools.permutations(range(n))]
    if even_only:
        perms = [p for p in perms if _parity(p) == 0]
    pos = {p: i for i, p in enumerate(perms)}
    # (p*q)(i) = p(q(i))
    mul = [[pos[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    return mul, ["".join(map(str, p)) for p in perms]


def _parity(p: Sequence[int]) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(p)), 2) if p[i] > p[j]) % 2


def direct_product(g1: FiniteGroup, g2: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """Direct product with lexicographic element order: ``(a, b)`` has index ``a*|g2| + b``."""
    n2 = g2.order
    mul = [
        [g1.mul[a1][a2] * n2 + g2.mul[b1][b2] for a2 in range(g1.order) for b2 in range(n2)]
        for a1 in range(g1.order)
        for b1 in range(n2)
    ]
    labels = [f"({l1},{l2})" for l1 in g1.labels for l2 in g2.labels]
    return from_table(mul, labels, name or f"{g1.name}x{g2.name}")


def _unit_group(n: int) -> FiniteGroup:
    units = [a for a in range(n) if math.gcd(a, n) == 1] if n > 1 else [0]
    pos = {a: i for i, a in enumerate(units)}
    mul = [[pos[(a * b) % n] for b in units] for a in units]
    return from_table(mul, [f"σ{a}" for a in units], f"unit_group_mod({n})")


@dataclass(frozen=True)
class GroupSpec:
    """Description of a catalog group or a raw table.

    ``kind`` is one of ``cyclic``, ``dihedral``, ``c2_times``, ``unit_group_mod``,
    ``table`` and ``product``.
    """

    kind: str
    n: int | None = None
    base: str | None = None
    mul: tuple[tuple[int, ...], ...] | None = None
    factors: tuple["GroupSpec", ...] | None = None

    @classmethod
    def from_json(cls, obj) -> "GroupSpec":
        if isinstance(obj, str):
            return parse_group_name(obj)
        if not isinstance(obj, dict) or "kind" not in obj:
            raise InputError("expected an object with a 'kind' key", field="group")
        kind = obj["kind"]
        if kind in ("cyclic", "dihedral", "unit_group_mod"):
            n = obj.get("n")
            if isinstance(n, bool) or not isinstance(n, int) or n < 1:
                raise InputError(f"'n' must be a positive integer, got {n!r}", field="group.n")
            return cls(kind, n=n)
        if kind == "c2_times":
            base = obj.get("base")
            if base not in ("A4", "S4"):
                raise InputError(f"'base' must be 'A4' or 'S4', got {base!r}", field="group.base")
            return cls(kind, base=base)
        if kind == "table":
            mul = obj.get("mul")
            if not isinstance(mul, list) or not all(isinstance(r, list) for r in mul):
                raise InputError("'mul' must be a list of rows", field="group.mul")
            return cls(kind, mul=tuple(tuple(r) for r in mul))
        if kind == "product":
            fs = obj.get("factors")
            if not isinstance(fs, list) or len(fs) < 1:
                raise InputError("'factors' must be a non-empty list", field="group.factors")
            return cls(kind, factors=tuple(cls.from_json(f) for f in fs))
        raise InputError(f"unknown group kind {kind!r}", field="group.kind")

    def to_json(self) -> dict:
        if self.kind in ("cyclic", "dihedral", "unit_group_mod"):
            return {"kind": self.kind, "n": self.n}
        if self.kind == "c2_times":
            return {"kind": self.kind, "base": self.base}
        if self.kind == "table":
            return {"kind": self.kind, "mul": [list(r) for r in self.mul]}
        return {"kind": self.kind, "factors": [f.to_json() for f in self.factors]}

    def __str__(self) -> str:
        if self.kind in ("cyclic", "dihedral", "unit_group_mod"):
            return f"{self.kind}({self.n})"
        if self.kind == "c2_times":
            return f"c2_times({self.base})"
        if self.kind == "product":
            return "x".join(str(f) for f in self.factors)
        return f"table({len(self.mul)})"


_NAME_RE = re.compile(r"^\s*(cyclic|dihedral|unit_group_mod|c2_times)\(\s*(\w+)\s*\)\s*$")
_ALIASES = {
    "Z6": GroupSpec("cyclic", n=6),
    "C6": GroupSpec("cyclic", n=6),
    "D6": GroupSpec("dihedral", n=6),
    "C2xA4": GroupSpec("c2_times", base="A4"),
    "C2xS4": GroupSpec("c2_times", base="S4"),
}


def parse_group_name(name: str) -> GroupSpec:
    """Parse inline catalog names such as ``cyclic(8)``, ``c2_times(S4)`` or ``D6``."""
    if name in _ALIASES:
        return _ALIASES[name]
    m = _NAME_RE.match(name)
    if not m:
        raise InputError(f"unrecognised group name {name!r}", field="group")
    kind, arg = m.groups()
    if kind == "c2_times":
        return GroupSpec.from_json({"kind": kind, "base": arg})
    if not arg.isdigit():
        raise InputError(f"expected an integer in {name!r}", field="group")
    return GroupSpec.from_json({"kind": kind, "n": int(arg)})


@lru_cache(maxsize=64)
def make_group(spec: GroupSpec | str) -> FiniteGroup:
    """Build a catalog group.

    Element orderings: cyclic groups by exponent; ``unit_group_mod(n)`` by
    ascending residue; ``dihedral(n)`` as ``e, r, ..., r^(n-1), s, sr, ...``;
    direct products (including ``c2_times``) lexicographically.
    """
    if isinstance(spec, str):
        spec = parse_group_name(spec)
    kind = spec.kind
    if kind in ("cyclic", "dihedral"):
        size = spec.n * (2 if kind == "dihedral" else 1)
        if size > MAX_ORDER:
            raise OrderTooLarge(f"{spec} has order {size} > {MAX_ORDER}", field="group")
    elif kind == "unit_group_mod":
        size = sum(1 for a in range(spec.n) if math.gcd(a, spec.n) == 1)
        if size > MAX_ORDER:
            raise OrderTooLarge(f"{spec} has order {size} > {MAX_ORDER}", field="group")
    if kind == "cyclic":
        G = _cyclic(spec.n)
    elif kind == "dihedral":
        G = _dihedral(spec.n)
    elif kind == "unit_group_mod":
        G = _unit_group(spec.n)
    elif kind == "c2_times":
        mul, labels = _symmetric(4, even_only=spec.base == "A4")
        base = from_table(mul, labels, spec.base)
        G = direct_product(make_group(GroupSpec("cyclic", n=2)), base, str(spec))
    elif kind == "table":
        G = from_table(spec.mul, name="table")
    elif kind == "product":
        G = make_group(spec.factors[0])
        for f in spec.factors[1:]:
            G = direct_product(G, make_group(f), str(spec))
    else:
        raise InputError(f"unknown group kind {kind!r}", field="group.kind")
    return G


# ---------------------------------------------------------------------------
# subgroups


def closure(G: FiniteGroup, gens: Iterable[int]) -> tuple[int, ...]:
    """Sorted elements of the subgroup generated by ``gens``."""
    gens = list(dict.fromkeys(gens))
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            row = G.mul[x]
            for g in gens:
                y = row[g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen))


def is_subgroup(G: FiniteGroup, elems: Iterable[int]) -> bool:
    s = set(elems)
    if G.identity not in s:
        return False
    return all(G.inv[a] in s and all(G.mul[a][b] in s for b in s) for a in s)


def make_subgroup(G: FiniteGroup, elems: Iterable[int]) -> Subgroup:
    """Wrap a set of elements as a subgroup, checking closure."""
    elems = tuple(sorted(set(G.index_of(x) for x in elems)))
    if not is_subgroup(G, elems):
        raise InputError(f"{list(elems)} is not a subgroup", field="H")
    return Subgroup(G, elems)


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (G.identity,))


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(G.elements))


def central_involutions(G: FiniteGroup) -> list[CentralInvolution]:
    """Central elements of order two, in index order."""
    out = []
    for x in G.elements:
        if x == G.identity or G.mul[x][x] != G.identity:
            continue
        if all(G.mul[x][y] == G.mul[y][x] for y in G.elements):
            out.append(CentralInvolution(x))
    return out


def _subgroups_dividing(G: FiniteGroup, k: int) -> set[tuple[int, ...]]:
    # Every subgroup of order dividing k arises from a chain of closures whose
    # orders all divide k, so anything else can be discarded on sight.
    cache = G._subgroup_cache
    if k in cache:
        return cache[k]
    found = {closure(G, [x]) for x in G.elements if k % G.element_order(x) == 0}
    frontier = list(found)
    while frontier:
        nxt = []
        for S in frontier:
            if len(S) == k:
                continue
            members = set(S)
            for x in G.elements:
                if x in members:
                    continue
                T = closure(G, (x,) + S)
                if k % len(T) == 0 and T not in found:
                    found.add(T)
                    nxt.append(T)
        frontier = nxt
    cache[k] = found
    return found


def subgroups_of_order(
    G: FiniteGroup, k: int, excluding: CentralInvolution | int | None = None
) -> list[Subgroup]:
    """All subgroups of order ``k``, optionally only those avoiding one element.

    Raises:
        NonDivisorOrder: ``k`` does not divide ``|G|``.
    """
    if k < 1 or G.order % k:
        raise NonDivisorOrder(f"{k} does not divide the group order {G.order}", field="k")
    subs = sorted(S for S in _subgroups_dividing(G, k) if len(S) == k)
    out = []
    for S in subs:
        assert is_subgroup(G, S)
        if excluding is not None and int(excluding) in S:
            continue
        out.append(Subgroup(G, S))
    return out


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, sorted by order and then lexicographically."""
    subs = _subgroups_dividing(G, G.order)
    return [Subgroup(G, S) for S in sorted(subs, key=lambda s: (len(s), s))]


def right_cosets(G: FiniteGroup, H: Subgroup) -> CosetSpace:
    coset_of = [-1] * G.order
    cosets = []
    for g in G.elements:
        if coset_of[g] >= 0:
            continue
        c = tuple(sorted(G.mul[h][g] for h in H.elems))
        for x in c:
            coset_of[x] = len(cosets)
        cosets.append(c)
    return CosetSpace(G, H, tuple(cosets), tuple(coset_of))


def conjugate_subgroup(G: FiniteGroup, H: Subgroup, g: int) -> Subgroup:
    """``g^-1 H g``."""
    return Subgroup(G, tuple(sorted(G.conj(g, h) for h in H.elems)))


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    members = H._members
    elems = tuple(g for g in G.elements if all(G.conj(g, h) in members for h in H.elems))
    return Subgroup(G, elems)


def are_conjugate(G: FiniteGroup, H1: Subgroup, H2: Subgroup) -> int | None:
    """Smallest ``g`` with ``g^-1 H1 g = H2``, or ``None``."""
    if H1.order != H2.order:
        return None
    target = H2._members
    for g in G.elements:
        if all(G.conj(g, h) in target for h in H1.elems):
            return g
    return None
