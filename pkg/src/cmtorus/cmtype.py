"""CM types as subsets of a right coset space ``H\\G``.

Conventions: ``G`` acts on the Galois closure on the right, an embedding of the
fixed field of ``H`` is a right coset ``Hg``, and precomposing with a field
automorphism (an element ``n`` of the normalizer of ``H``) sends ``Hg`` to
``H(ng)``. Complex conjugation is a central involution ``rho`` and acts by
``Hg -> H(g rho)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import InputError, NotACMType, NotAConjugation, RhoInSubgroup, SpaceMismatch
from .groups import (
    CentralInvolution,
    CosetSpace,
    FiniteGroup,
    Subgroup,
    conjugate_subgroup,
    normalizer,
    right_cosets,
)


@dataclass(frozen=True)
class CMType:
    space: CosetSpace
    phi: tuple[int, ...]  # sorted coset indices
    rho: int

    @property
    def group(self) -> FiniteGroup:
        return self.space.group

    @property
    def subgroup(self) -> Subgroup:
        return self.space.subgroup

    @property
    def g(self) -> int:
        return len(self.phi)

    @cached_property
    def lift(self) -> frozenset[int]:
        cosets = self.space.cosets
        return frozenset(x for c in self.phi for x in cosets[c])

    def rep_labels(self) -> list[str]:
        G = self.group
        return [G.labels[self.space.cosets[c][0]] for c in self.phi]

    def to_json(self) -> dict:
        return {
            "H": list(self.subgroup.elems),
            "phi": [self.space.cosets[c][0] for c in self.phi],
            "rho": self.rho,
        }


@dataclass(frozen=True)
class ReflexDatum:
    reflex_group: Subgroup
    reflex_space: CosetSpace
    reflex_type: CMType
    lift_inverse: frozenset[int]

    def to_json(self) -> dict:
        G = self.reflex_space.group
        return {
            "reflex_group": list(self.reflex_group.elems),
            "reflex_group_labels": self.reflex_group.labels(),
            "reflex_type": self.reflex_type.to_json(),
            "reflex_type_labels": self.reflex_type.rep_labels(),
            "lift_inverse": sorted(self.lift_inverse),
            "lift_inverse_labels": [G.labels[x] for x in sorted(self.lift_inverse)],
        }


@dataclass(frozen=True)
class CMFactor:
    cm_type: CMType
    label: str = ""

    @property
    def space(self) -> CosetSpace:
        return self.cm_type.space

    @property
    def g(self) -> int:
        return self.cm_type.g


def _rho_coset_map(space: CosetSpace, rho: int) -> list[int]:
    G = space.group
    return [space.coset_of[G.mul[c[0]][rho]] for c in space.cosets]


def _check_rho(space: CosetSpace, rho: int) -> int:
    rho = int(rho)
    G = space.group
    if not 0 <= rho < G.order:
        raise InputError(f"rho={rho} is not an element of the group", field="rho")
    if rho == G.identity or G.mul[rho][rho] != G.identity:
        raise InputError(f"rho={G.labels[rho]} is not an involution", field="rho")
    if any(G.mul[rho][y] != G.mul[y][rho] for y in G.elements):
        raise InputError(f"rho={G.labels[rho]} is not central", field="rho")
    if rho in space.subgroup:
        raise RhoInSubgroup(f"rho={G.labels[rho]} lies in the subgroup H", field="rho")
    return rho


def validate_cm_type(
    space: CosetSpace, phi: Iterable[int], rho: CentralInvolution | int
) -> CMType:
    """Check that ``phi`` picks exactly one coset out of every conjugate pair.

    Raises:
        RhoInSubgroup: ``rho`` lies in ``H``, so conjugation fixes every coset.
        NotACMType: wrong size, or ``phi`` contains a conjugate pair.
    """
    rho = _check_rho(space, rho)
    phi = tuple(sorted(set(phi)))
    if any(not 0 <= c < space.size for c in phi):
        raise InputError(f"coset index out of range in {list(phi)}", field="phi")
    if 2 * len(phi) != space.size:
        raise NotACMType(f"|phi|={len(phi)} but there are {space.size} cosets", field="phi")
    bar = _rho_coset_map(space, rho)
    members = set(phi)
    for c in phi:
        if bar[c] in members:
            G = space.group
            raise NotACMType(
                f"phi contains the conjugate pair {G.labels[space.cosets[c][0]]}, "
                f"{G.labels[space.cosets[bar[c]][0]]}",
                field="phi",
            )
    return CMType(space, phi, rho)


def cm_type_from_elements(
    space: CosetSpace, elems: Iterable[int | str], rho: CentralInvolution | int
) -> CMType:
    """Build a CM type from any elements of the chosen cosets (indices or labels)."""
    G = space.group
    phi = {space.coset_of[G.index_of(x)] for x in elems}
    return validate_cm_type(space, phi, rho)


def enumerate_cm_types(space: CosetSpace, rho: CentralInvolution | int) -> list[CMType]:
    """All ``2^g`` CM types on ``space``, sorted lexicographically by coset indices."""
    rho = _check_rho(space, rho)
    bar = _rho_coset_map(space, rho)
    pairs = [(c, bar[c]) for c in range(space.size) if c < bar[c]]
    phis = sorted(tuple(sorted(choice)) for choice in itertools.product(*pairs))
    return [CMType(space, phi, rho) for phi in phis]


def lift(t: CMType) -> frozenset[int]:
    """Elements of ``G`` whose coset lies in the CM type."""
    return t.lift


def left_stabilizer(G: FiniteGroup, S: frozenset[int]) -> tuple[int, ...]:
    return tuple(g for g in G.elements if all(G.mul[g][x] in S for x in S))


def right_stabilizer(G: FiniteGroup, S: frozenset[int]) -> tuple[int, ...]:
    return tuple(g for g in G.elements if all(G.mul[x][g] in S for x in S))


def reflex(t: CMType) -> ReflexDatum:
    """Reflex group (right stabilizer of the lift) and reflex CM type."""
    G = t.group
    Phi = t.lift
    H_ref = Subgroup(G, right_stabilizer(G, Phi))
    space = right_cosets(G, H_ref)
    inv_lift = frozenset(G.inv[x] for x in Phi)
    phi_star = {space.coset_of[x] for x in inv_lift}
    return ReflexDatum(H_ref, space, validate_cm_type(space, phi_star, t.rho), inv_lift)


def is_primitive(t: CMType) -> bool:
    return left_stabilizer(t.group, t.lift) == t.subgroup.elems


def translate(t: CMType, n: int) -> CMType:
    """Precompose with the automorphism given by ``n`` in the normalizer: ``Hg -> H(ng)``."""
    G = t.group
    space = t.space
    if any(G.conj(n, h) not in space.subgroup for h in space.subgroup.elems):
        raise NotAConjugation(f"{G.labels[n]} does not normalize H", field="n")
    phi = {space.coset_of[G.mul[n][space.cosets[c][0]]] for c in t.phi}
    return CMType(space, tuple(sorted(phi)), t.rho)


def essentially_equal(t1: CMType, t2: CMType) -> int | None:
    """Smallest ``n`` in the normalizer of ``H`` with ``n * lift(t1) = lift(t2)``.

    Raises:
        SpaceMismatch: the two types live on different coset spaces.
    """
    if t1.subgroup != t2.subgroup:
        raise SpaceMismatch("CM types are defined for different subgroups", field="H")
    G = t1.group
    target = t2.lift
    for n in normalizer(G, t1.subgroup).elems:
        if all(G.mul[n][x] in target for x in t1.lift):
            return n
    return None


def transport(t: CMType, g: int, target_H: Subgroup) -> CMType:
    """Move a CM type along the field isomorphism induced by ``g``.

    The fixed field of ``H`` is carried onto the fixed field of ``g^-1 H g``; an
    embedding ``Hx`` becomes ``(g^-1 H g)(g^-1 x)``, so the lift becomes
    ``g^-1 * lift(t)``.

    Raises:
        NotAConjugation: ``g^-1 H g != target_H``.
    """
    G = t.group
    if conjugate_subgroup(G, t.subgroup, g).elems != target_H.elems:
        raise NotAConjugation(
            f"{G.labels[g]} does not conjugate H onto the target subgroup", field="g"
        )
    space = right_cosets(G, target_H)
    gi = G.inv[g]
    phi = {space.coset_of[G.mul[gi][x]] for x in t.lift}
    return validate_cm_type(space, phi, t.rho)
