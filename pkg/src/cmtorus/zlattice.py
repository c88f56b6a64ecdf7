"""Exact integer linear algebra: Hermite/Smith normal forms, kernels, sublattice indices.

All arithmetic uses Python integers, so there is no overflow.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError(f"data does not have shape {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.data[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.data)) if self.rows else ())

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = other.T.data
        data = tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.data)
        return IntMatrix(self.rows, other.cols, data)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """``self @ v`` for a column vector given as a sequence."""
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.data)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        return IntMatrix(self.rows, self.cols + other.cols,
                         tuple(a + b for a, b in zip(self.data, other.data)))

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ValueError("column counts differ")
        return IntMatrix(self.rows + other.rows, self.cols, self.data + other.data)

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "data": [[str(x) for x in r] for r in self.data]}

    @classmethod
    def from_json(cls, obj: dict) -> "IntMatrix":
        rows, cols = obj["rows"], obj["cols"]
        return cls(rows, cols, tuple(tuple(int(x) for x in r) for r in obj["data"]))

    def __str__(self) -> str:
        if not self.rows:
            return f"[] ({self.rows}x{self.cols})"
        w = max(len(str(x)) for r in self.data for x in r) if self.cols else 1
        return "\n".join("[" + " ".join(str(x).rjust(w) for x in r) + "]" for r in self.data)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``x*a + y*b = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _hnf_rows(A: list[list[int]], U: list[list[int]] | None) -> int:
    """Reduce ``A`` in place to row-style HNF, mirroring row operations on ``U``.

    Returns the rank.
    """
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    p = 0
    for col in range(ncols):
        if p == nrows:
            break
        for i in range(p + 1, nrows):
            b = A[i][col]
            if b == 0:
                continue
            a = A[p][col]
            g, x, y = _xgcd(a, b)
            ag, bg = a // g, b // g
            rp, ri = A[p], A[i]
            A[p] = [x * u + y * v for u, v in zip(rp, ri)]
            A[i] = [ag * v - bg * u for u, v in zip(rp, ri)]
            if U is not None:
                up, ui = U[p], U[i]
                U[p] = [x * u + y * v for u, v in zip(up, ui)]
                U[i] = [ag * v - bg * u for u, v in zip(up, ui)]
        piv = A[p][col]
        if piv == 0:
            continue
        if piv < 0:
            A[p] = [-v for v in A[p]]
            if U is not None:
                U[p] = [-v for v in U[p]]
            piv = -piv
        for i in range(p):
            q = A[i][col] // piv
            if q:
                A[i] = [u - q * v for u, v in zip(A[i], A[p])]
                if U is not None:
                    U[i] = [u - q * v for u, v in zip(U[i], U[p])]
        p += 1
    return p


def hnf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u @ m == h``. Pivots of ``h`` are
    positive, entries above a pivot lie in ``[0, pivot)``, and zero rows come last.
    """
    A = [list(r) for r in m.data]
    U = [[int(i == j) for j in range(m.rows)] for i in range(m.rows)]
    _hnf_rows(A, U)
    return IntMatrix(m.rows, m.cols, tuple(map(tuple, A))), IntMatrix(m.rows, m.rows, tuple(map(tuple, U)))


def hnf_rank(m: IntMatrix) -> int:
    A = [list(r) for r in m.data]
    return _hnf_rows(A, None)


def rank(m: IntMatrix) -> int:
    return hnf_rank(m)


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Basis (as rows) of the integer right kernel ``{v : m v = 0}``.

    The basis spans the full kernel lattice. It is returned in Hermite normal
    form so the output is canonical.
    """
    A = [list(r) for r in m.T.data]  # cols x rows
    n = m.cols
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    r = _hnf_rows(A, U)
    K = U[r:]
    if not K:
        return IntMatrix(0, n, ())
    _hnf_rows(K, None)
    return IntMatrix(len(K), n, tuple(map(tuple, K)))


def smith_invariants(m: IntMatrix) -> list[int]:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` of the Smith normal form."""
    A = [list(r) for r in m.data]
    nr, nc = m.rows, m.cols
    out = []
    t = 0
    while t < min(nr, nc):
        nz = [(abs(A[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            piv = A[t][t]
            done = True
            for i in range(t + 1, nr):
                if A[i][t]:
                    q = A[i][t] // piv
                    A[i] = [u - q * v for u, v in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, nc):
                if A[t][j]:
                    q = A[t][j] // piv
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if done:
                bad = [(i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if A[i][j] % piv]
                if not bad:
                    break
                i, _ = bad[0]
                A[t] = [u + v for u, v in zip(A[t], A[i])]
                done = False
            # move the smallest remaining entry of row/col t into the pivot
            cand = [(abs(A[i][t]), i, t) for i in range(t, nr) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t, nc) if A[t][j]]
            _, i, j = min(cand)
            if i != t:
                A[t], A[i] = A[i], A[t]
            if j != t:
                for row in A:
                    row[t], row[j] = row[j], row[t]
        out.append(abs(A[t][t]))
        t += 1
    return out


class SpanKind(enum.Enum):
    FULL = "FULL"
    FINITE_INDEX = "FINITE_INDEX"
    INFINITE_INDEX = "INFINITE_INDEX"


@dataclass(frozen=True)
class SpanStatus:
    kind: SpanKind
    rank: int
    index: int | None = None  # None for infinite index

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "rank": self.rank, "index": self.index}


def span_status(generators: IntMatrix, ambient_rank: int) -> SpanStatus:
    """Classify the row span of ``generators`` inside ``Z^ambient_rank``."""
    if generators.rows and generators.cols != ambient_rank:
        raise ValueError(f"generators have {generators.cols} columns, expected {ambient_rank}")
    A = [list(r) for r in generators.data]
    r = _hnf_rows(A, None)
    if r < ambient_rank:
        return SpanStatus(SpanKind.INFINITE_INDEX, r)
    index = 1
    for i in range(r):
        index *= A[i][i]
    if index == 1:
        return SpanStatus(SpanKind.FULL, r, 1)
    return SpanStatus(SpanKind.FINITE_INDEX, r, index)
