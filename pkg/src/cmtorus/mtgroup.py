"""Character-lattice matrices of CM tori and the projection criterion.

For a CM type on ``H\\G`` the composite of norm and reflex norm on characters
sends the basis vector of a coset ``Hg`` to the sum of ``[r g]`` over ``r`` in the
reflex lift. The Mumford-Tate torus of a product is the image of the torus of
the Galois closure, so its character lattice is ``Z^(2g1 + 2g2) / ker M``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .cmtype import CMFactor, CMType, reflex
from .errors import InputError
from .groups import FiniteGroup
from .zlattice import IntMatrix, SpanKind, hnf_rank, kernel_basis, span_status


class Status(enum.Enum):
    ISO = "ISO"
    ISOGENY = "ISOGENY"
    NEITHER = "NEITHER"

    def at_least(self, other: "Status") -> bool:
        rank = {Status.ISO: 2, Status.ISOGENY: 1, Status.NEITHER: 0}
        return rank[self] >= rank[other]


@dataclass(frozen=True)
class PairInput:
    group: FiniteGroup
    rho: int
    factor1: CMFactor
    factor2: CMFactor

    def __post_init__(self):
        for name in ("factor1", "factor2"):
            t = getattr(self, name).cm_type
            if t.group is not self.group:
                raise InputError("factor is defined over a different group", field=name)
            if t.rho != int(self.rho):
                raise InputError("factor uses a different complex conjugation", field="rho")
            if int(self.rho) in t.subgroup:
                raise InputError(f"rho lies in the subgroup of {name}", field="rho")


@dataclass(frozen=True)
class PairAnalysis:
    dim_mt_1: int
    dim_mt_2: int
    dim_mt_product: int
    status_pi1: Status
    status_pi2: Status
    kernel_rank: int
    matrix: IntMatrix
    kernel: IntMatrix
    index_pi1: int | None = None
    index_pi2: int | None = None

    @property
    def dim_hg_1(self) -> int:
        return self.dim_mt_1 - 1

    @property
    def dim_hg_2(self) -> int:
        return self.dim_mt_2 - 1

    @property
    def dim_hg_product(self) -> int:
        return self.dim_mt_product - 1

    def to_json(self, include_matrix: bool = True) -> dict:
        out = {
            "dim_mt_1": self.dim_mt_1,
            "dim_mt_2": self.dim_mt_2,
            "dim_mt_product": self.dim_mt_product,
            "dim_hg_1": self.dim_hg_1,
            "dim_hg_2": self.dim_hg_2,
            "dim_hg_product": self.dim_hg_product,
            "status_pi1": self.status_pi1.value,
            "status_pi2": self.status_pi2.value,
            "index_pi1": self.index_pi1,
            "index_pi2": self.index_pi2,
            "kernel_rank": self.kernel_rank,
        }
        if include_matrix:
            out["matrix"] = self.matrix.to_json()
            out["kernel"] = self.kernel.to_json()
        return out


def reflex_norm_block(t: CMType) -> IntMatrix:
    """Matrix of the norm composed with the reflex norm, rows ``G`` and columns ``H\\G``.

    Entry ``(g1, Hg2)`` is 1 exactly when ``g1 g2^-1`` lies in the reflex lift
    (the inverses of the lift of ``t``).
    """
    G = t.group
    star = reflex(t).lift_inverse
    reps = t.space.reps
    rows = []
    for g1 in G.elements:
        row = G.mul[g1]
        rows.append(tuple(int(row[G.inv[g2]] in star) for g2 in reps))
    return IntMatrix(G.order, len(reps), tuple(rows))


def pair_matrix(p: PairInput) -> IntMatrix:
    return reflex_norm_block(p.factor1.cm_type).hstack(reflex_norm_block(p.factor2.cm_type))


def mt_dimension(t: CMType) -> tuple[int, int]:
    """``(dim MT, dim Hg)`` of a single CM abelian variety."""
    d = hnf_rank(reflex_norm_block(t))
    return d, d - 1


def _status(kernel: IntMatrix, offset: int, width: int, n: int) -> tuple[Status, int | None]:
    block = tuple(tuple(int(j == offset + i) for j in range(n)) for i in range(width))
    gens = IntMatrix(kernel.rows + width, n, kernel.data + block)
    st = span_status(gens, n)
    if st.kind is SpanKind.FULL:
        return Status.ISO, 1
    if st.kind is SpanKind.FINITE_INDEX:
        return Status.ISOGENY, st.index
    return Status.NEITHER, None


def pair_analysis(p: PairInput) -> PairAnalysis:
    """Dimensions of the three Mumford-Tate groups and the type of each projection.

    ``pi_i`` is an isomorphism iff the kernel of ``M`` together with the
    coordinate block of factor ``i`` spans the whole lattice, and an isogeny iff
    they span a finite-index sublattice.
    """
    b1 = reflex_norm_block(p.factor1.cm_type)
    b2 = reflex_norm_block(p.factor2.cm_type)
    M = b1.hstack(b2)
    K = kernel_basis(M)
    n = M.cols
    s1, i1 = _status(K, 0, b1.cols, n)
    s2, i2 = _status(K, b1.cols, b2.cols, n)
    return PairAnalysis(
        dim_mt_1=hnf_rank(b1),
        dim_mt_2=hnf_rank(b2),
        dim_mt_product=n - K.rows,
        status_pi1=s1,
        status_pi2=s2,
        kernel_rank=K.rows,
        matrix=M,
        kernel=K,
        index_pi1=i1,
        index_pi2=i2,
    )
