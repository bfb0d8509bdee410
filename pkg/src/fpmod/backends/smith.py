"""Smith normal form over Z and fields, with both transforms."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import UnsupportedBackend
from ..ring import Matrix
from .euclidean import Integers, PrimeField, Rationals


@dataclass(frozen=True)
class SmithResult:
    diag: tuple
    left: Matrix
    right: Matrix


def smith_normal_form(m: Matrix) -> SmithResult:
    """``U m V`` is diagonal with ``d_1 | d_2 | ...``; returns the nonzero ``d_i``."""
    ring = m.ring
    if not isinstance(ring, (Integers, Rationals, PrimeField)):
        raise UnsupportedBackend(f"Smith normal form is not available over {ring!r}")
    r, c = m.nrows, m.ncols
    A = [list(row) for row in m.rows]
    U = [list(row) for row in Matrix.identity(ring, r).rows]
    V = [list(row) for row in Matrix.identity(ring, c).rows]
    iz = ring.is_zero
    size, quo = ring._size, ring._quo

    def row_op(i, k, q):
        # row_i -= q * row_k
        A[i] = ring._axpy(A[i], q, A[k])
        U[i] = ring._axpy(U[i], q, U[k])

    def col_op(j, k, q):
        # col_j -= q * col_k
        for row in A:
            row[j] = ring.sub(row[j], ring.mul(q, row[k]))
        for row in V:
            row[j] = ring.sub(row[j], ring.mul(q, row[k]))

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    t = 0
    while t < min(r, c):
        cells = [(size(A[i][j]), i, j) for i in range(t, r) for j in range(t, c)
                 if not iz(A[i][j])]
        if not cells:
            break
        _, i, j = min(cells)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            changed = False
            for i in range(t + 1, r):
                if not iz(A[i][t]):
                    row_op(i, t, quo(A[i][t], A[t][t]))
                    if not iz(A[i][t]):
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, c):
                if not iz(A[t][j]):
                    col_op(j, t, quo(A[t][j], A[t][t]))
                    if not iz(A[t][j]):
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            # divisibility: fold a non-divisible entry into the pivot row
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c)
                        if not iz(quo_rem(ring, A[i][j], A[t][t]))), None)
            if bad is None:
                break
            row_op(t, bad[0], ring.neg(ring.one))
        u = ring._normalizer(A[t][t])
        if u != ring.one:
            A[t] = ring._scale_row(u, A[t])
            U[t] = ring._scale_row(u, U[t])
        t += 1
    diag = tuple(A[i][i] for i in range(t))
    return SmithResult(diag, Matrix(ring, (tuple(x) for x in U), r, coerce=False),
                       Matrix(ring, (tuple(x) for x in V), c, coerce=False))


def quo_rem(ring, a, b):
    return ring.sub(a, ring.mul(ring._quo(a, b), b))
