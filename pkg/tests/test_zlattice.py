import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import ZZ, Matrix
from sympy.matrices.normalforms import invariant_factors

from cmtorus.zlattice import (
    IntMatrix,
    SpanKind,
    hnf,
    kernel_basis,
    rank,
    smith_invariants,
    span_status,
)

from oracles import bareiss_det, bareiss_rank, primitive_integer, rational_kernel, solve_rational


def matrices(max_rows=8, max_cols=8, lo=-9, hi=9):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def is_hnf(h: IntMatrix) -> bool:
    last = -1
    zero_seen = False
    for i, row in enumerate(h.data):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            zero_seen = True
            continue
        if zero_seen:
            return False
        p = nz[0]
        if p <= last or row[p] <= 0:
            return False
        if any(not 0 <= h.data[k][p] < row[p] for k in range(i)):
            return False
        last = p
    return True


def random_unimodular(n, rng, steps=12):
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            U[i] = [-x for x in U[i]]
            continue
        c = rng.randint(-3, 3)
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
    return U


def test_hnf_small_example():
    h, u = hnf(IntMatrix.from_rows([[4, 6], [2, 4]]))
    assert h.tolist() == [[2, 0], [0, 2]]
    assert abs(bareiss_det(u.tolist())) == 1
    assert bareiss_det([[4, 6], [2, 4]]) == 4


def test_hnf_zero_and_identity():
    h, _ = hnf(IntMatrix.zeros(3, 2))
    assert h.tolist() == [[0, 0]] * 3
    assert hnf(IntMatrix.identity(4))[0] == IntMatrix.identity(4)


def test_kernel_example():
    K = kernel_basis(IntMatrix.from_rows([[1, 1, 1]]))
    assert K.rows == 2
    for v in K.data:
        assert sum(v) == 0
    assert kernel_basis(IntMatrix.identity(3)).rows == 0


def test_kernel_saturated_example():
    # 2x + 4y = 0 has kernel spanned by (2, -1), not a multiple of it
    K = kernel_basis(IntMatrix.from_rows([[2, 4]]))
    assert K.rows == 1
    assert sorted(map(abs, K.data[0])) == [1, 2]


def test_smith_example():
    assert smith_invariants(IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])) == [2, 6, 12]
    assert smith_invariants(IntMatrix.zeros(2, 2)) == []


def test_span_status_examples():
    assert span_status(IntMatrix.identity(3), 3).kind is SpanKind.FULL
    st2 = span_status(IntMatrix.from_rows([[2, 0], [0, 1]]), 2)
    assert (st2.kind, st2.index) == (SpanKind.FINITE_INDEX, 2)
    st3 = span_status(IntMatrix.from_rows([[1, 1], [2, 2]]), 2)
    assert (st3.kind, st3.rank, st3.index) == (SpanKind.INFINITE_INDEX, 1, None)
    assert span_status(IntMatrix(0, 2, ()), 2).kind is SpanKind.INFINITE_INDEX
    with pytest.raises(ValueError):
        span_status(IntMatrix.identity(2), 3)


def test_json_roundtrip():
    m = IntMatrix.from_rows([[10**30, -1], [0, 7]])
    d = m.to_json()
    assert d["data"][0][0] == str(10**30)
    assert IntMatrix.from_json(d) == m


# ---------------------------------------------------------------------------
# properties


@given(matrices())
@settings(max_examples=200, deadline=None)
def test_hnf_properties(rows):
    m = IntMatrix.from_rows(rows)
    h, u = hnf(m)
    assert u @ m == h
    assert abs(bareiss_det(u.tolist())) == 1
    assert is_hnf(h)
    assert hnf(h)[0] == h
    assert rank(m) == bareiss_rank(rows)


@given(matrices(6, 6), st.integers(0, 2**32))
@settings(max_examples=100, deadline=None)
def test_hnf_is_canonical(rows, seed):
    m = IntMatrix.from_rows(rows)
    P = IntMatrix.from_rows(random_unimodular(m.rows, random.Random(seed)))
    assert hnf(P @ m)[0] == hnf(m)[0]


@given(matrices())
@settings(max_examples=200, deadline=None)
def test_kernel_properties(rows):
    m = IntMatrix.from_rows(rows)
    K = kernel_basis(m)
    assert K.rows == m.cols - bareiss_rank(rows)
    for v in K.data:
        assert all(x == 0 for x in m.apply(v))
    if K.rows:
        assert bareiss_rank(K.tolist()) == K.rows
    # saturation: every primitive rational kernel vector has integer coordinates in K
    for v in rational_kernel(rows, m.cols):
        w = primitive_integer(v)
        x = solve_rational(K.tolist(), w)
        assert x is not None and all(c.denominator == 1 for c in x)


@given(matrices(6, 6))
@settings(max_examples=150, deadline=None)
def test_smith_against_sympy(rows):
    m = IntMatrix.from_rows(rows)
    ours = smith_invariants(m)
    theirs = [abs(int(x)) for x in invariant_factors(Matrix(rows), domain=ZZ) if x != 0]
    assert ours == theirs
    assert len(ours) == bareiss_rank(rows)
    assert all(b % a == 0 for a, b in zip(ours, ours[1:]))


@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
@settings(max_examples=150, deadline=None)
def test_smith_product_is_determinant(rows):
    d = bareiss_det(rows)
    inv = smith_invariants(IntMatrix.from_rows(rows))
    if d == 0:
        assert len(inv) < len(rows)
    else:
        assert math.prod(inv) == abs(d)


@given(matrices(6, 5))
@settings(max_examples=150, deadline=None)
def test_span_index_matches_smith(rows):
    n = len(rows[0])
    st_ = span_status(IntMatrix.from_rows(rows), n)
    inv = smith_invariants(IntMatrix.from_rows(rows))
    if len(inv) < n:
        assert st_.kind is SpanKind.INFINITE_INDEX and st_.index is None
    else:
        assert st_.index == math.prod(inv)
        assert (st_.kind is SpanKind.FULL) == (st_.index == 1)
