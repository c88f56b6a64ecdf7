import itertools
import json

import pytest
from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form

from cmtorus.classify import SHIODA_MATRIX, shioda_input
from cmtorus.cmtype import (
    CMFactor,
    enumerate_cm_types,
    essentially_equal,
    is_primitive,
    translate,
    transport,
    validate_cm_type,
)
from cmtorus.errors import InputError
from cmtorus.groups import (
    all_subgroups,
    central_involutions,
    conjugate_subgroup,
    make_group,
    normalizer,
    right_cosets,
    trivial_subgroup,
)
from cmtorus.jsonio import parse_pair_input
from cmtorus.mtgroup import PairInput, Status, mt_dimension, pair_analysis, reflex_norm_block

from oracles import bareiss_rank


def analyse(t1, t2):
    return pair_analysis(PairInput(t1.group, t1.rho, CMFactor(t1), CMFactor(t2)))


def column_lattice(rows):
    return hermite_normal_form(Matrix(rows))


def oracle_status(M, lo, hi):
    """Status of pi_i from ranks and column lattices, independent of the kernel code."""
    Mi = [r[lo:hi] for r in M]
    if bareiss_rank(Mi) != bareiss_rank(M):
        return Status.NEITHER
    if column_lattice(Mi) == column_lattice(M):
        return Status.ISO
    return Status.ISOGENY


def types_on(spec, max_index=None):
    G = make_group(spec)
    out = []
    for rho in central_involutions(G):
        for H in all_subgroups(G):
            if rho.elem in H or (max_index and G.order // H.order > max_index):
                continue
            out.extend(enumerate_cm_types(right_cosets(G, H), rho))
    return out


SMALL = ["cyclic(4)", "cyclic(6)", "cyclic(8)"]


def test_shioda_matrix():
    p = shioda_input()
    a = pair_analysis(p)
    assert a.matrix.data == SHIODA_MATRIX
    assert a.matrix.column(0) == (1, 0, 0, 1, 1, 0)
    assert [r[6:] for r in a.matrix.data] == [(1, 0), (0, 1), (1, 0), (0, 1), (1, 0), (0, 1)]
    assert a.dim_mt_product == bareiss_rank(SHIODA_MATRIX) == 4
    assert a.kernel_rank == 4
    assert a.status_pi1 is Status.ISO
    assert a.status_pi2 is oracle_status(SHIODA_MATRIX, 6, 8)
    assert (a.dim_mt_1, a.dim_mt_2) == (bareiss_rank([r[:6] for r in SHIODA_MATRIX]), 2)


def test_quadratic_block_is_identity():
    G = make_group("cyclic(2)")
    t = validate_cm_type(right_cosets(G, trivial_subgroup(G)), [0], 1)
    assert reflex_norm_block(t).tolist() == [[1, 0], [0, 1]]
    assert mt_dimension(t) == (2, 1)


def test_cyclic4_dimension():
    G = make_group("cyclic(4)")
    t = validate_cm_type(right_cosets(G, trivial_subgroup(G)), [0, 1], 2)
    assert mt_dimension(t) == (3, 2)


def test_g4_pair(fixtures_dir):
    p = parse_pair_input(json.loads((fixtures_dir / "g4_pair.json").read_text()))
    a = pair_analysis(p)
    assert (a.status_pi1, a.status_pi2) == (Status.ISO, Status.ISO)
    M = a.matrix.tolist()
    assert oracle_status(M, 0, 8) is oracle_status(M, 8, 16) is Status.ISO
    assert a.dim_mt_1 == a.dim_mt_2 == a.dim_mt_product == bareiss_rank(M)


def test_klein_pair(fixtures_dir):
    p = parse_pair_input(json.loads((fixtures_dir / "klein_pair.json").read_text()))
    a = pair_analysis(p)
    M = a.matrix.tolist()
    assert (a.dim_mt_1, a.dim_mt_2, a.dim_mt_product) == (2, 2, 3) == (
        bareiss_rank([r[:2] for r in M]), bareiss_rank([r[2:] for r in M]), bareiss_rank(M))
    assert (a.status_pi1, a.status_pi2) == (Status.NEITHER, Status.NEITHER)


def test_pair_input_rejects_mixed_groups():
    G, K = make_group("cyclic(4)"), make_group("cyclic(8)")
    t = validate_cm_type(right_cosets(G, trivial_subgroup(G)), [0, 1], 2)
    u = validate_cm_type(right_cosets(K, trivial_subgroup(K)), [0, 1, 2, 3], 4)
    with pytest.raises(InputError):
        PairInput(G, 2, CMFactor(t), CMFactor(u))


def test_json_shape():
    d = pair_analysis(shioda_input()).to_json()
    assert d["dim_hg_product"] == d["dim_mt_product"] - 1 == 3
    assert "matrix" in d and "matrix" not in pair_analysis(shioda_input()).to_json(False)


# ---------------------------------------------------------------------------
# invariants


@pytest.mark.parametrize("spec", SMALL + ["dihedral(4)", "dihedral(6)"])
def test_block_sums(spec):
    for t in types_on(spec):
        B = reflex_norm_block(t)
        assert all(sum(B.column(j)) == t.group.order // 2 for j in range(B.cols))
        assert all(sum(r) == t.g for r in B.data)
        assert mt_dimension(t)[0] == bareiss_rank(B.tolist())


@pytest.mark.parametrize("spec", SMALL + ["dihedral(6)"])
def test_diagonal_and_swap(spec):
    ts = types_on(spec)
    for t in ts:
        a = analyse(t, t)
        assert a.dim_mt_product == a.dim_mt_1
        assert (a.status_pi1, a.status_pi2) == (Status.ISO, Status.ISO)
    for t1, t2 in itertools.islice(itertools.product(ts, repeat=2), 400):
        if t1.rho != t2.rho:
            continue
        a, b = analyse(t1, t2), analyse(t2, t1)
        assert (a.dim_mt_1, a.dim_mt_2, a.dim_mt_product) == (b.dim_mt_2, b.dim_mt_1, b.dim_mt_product)
        assert (a.status_pi1, a.status_pi2) == (b.status_pi2, b.status_pi1)


@pytest.mark.parametrize("spec", SMALL)
def test_statuses_match_oracle(spec):
    ts = types_on(spec)
    for t1, t2 in itertools.product(ts, repeat=2):
        if t1.rho != t2.rho:
            continue
        a = analyse(t1, t2)
        M = a.matrix.tolist()
        n1 = t1.space.size
        assert a.status_pi1 is oracle_status(M, 0, n1)
        assert a.status_pi2 is oracle_status(M, n1, len(M[0]))
        assert a.dim_mt_product == bareiss_rank(M)
        assert max(a.dim_mt_1, a.dim_mt_2) <= a.dim_mt_product <= a.dim_mt_1 + a.dim_mt_2 - 1
        assert (a.status_pi1 is not Status.NEITHER) == (a.dim_mt_1 == a.dim_mt_product)
        assert (a.status_pi2 is not Status.NEITHER) == (a.dim_mt_2 == a.dim_mt_product)


@pytest.mark.parametrize("spec", SMALL + ["dihedral(6)"])
def test_transport_invariance(spec):
    G = make_group(spec)
    ts = types_on(spec)
    for t1, t2 in itertools.islice(itertools.product(ts, repeat=2), 300):
        if t1.rho != t2.rho:
            continue
        base = analyse(t1, t2)
        for g in G.elements:
            moved = transport(t1, g, conjugate_subgroup(G, t1.subgroup, g))
            a = analyse(moved, t2)
            assert (a.dim_mt_1, a.dim_mt_2, a.dim_mt_product) == (
                base.dim_mt_1, base.dim_mt_2, base.dim_mt_product)
            assert (a.status_pi1, a.status_pi2) == (base.status_pi1, base.status_pi2)


@pytest.mark.parametrize("spec", SMALL + ["dihedral(6)"])
def test_essentially_equal_pairs_are_iso(spec):
    G = make_group(spec)
    for t in types_on(spec):
        for n in normalizer(G, t.subgroup):
            u = translate(t, n)
            assert essentially_equal(t, u) is not None
            a = analyse(t, u)
            assert (a.status_pi1, a.status_pi2) == (Status.ISO, Status.ISO)


def test_primitive_threefold_dimension():
    for t in types_on("cyclic(6)"):
        if t.g == 3:
            assert mt_dimension(t)[0] == (4 if is_primitive(t) else 2)
