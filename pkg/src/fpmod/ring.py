"""Ring abstraction and dense exact matrices.

Module elements are rows; a morphism ``R^{1 x m} -> R^{1 x n}`` is an
``m x n`` matrix acting by right multiplication.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable, Sequence

from .errors import RingMismatch, ShapeError


class Ring:
    """A computable ring.

    Subclasses supply element arithmetic plus the three module-level
    primitives ``basis``, ``reduce`` and ``syzygies`` on matrices.
    """

    commutative = True
    is_field = False
    # basis_of_module output is reduced and may replace a relation matrix
    reduced_basis = True

    def _key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    # -- elements ---------------------------------------------------------
    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    def coerce(self, x):
        raise NotImplementedError

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def dot(self, xs, ys):
        acc = self.zero
        for x, y in zip(xs, ys):
            acc = self.add(acc, self.mul(x, y))
        return acc

    def is_zero(self, a) -> bool:
        return a == self.zero

    def from_int(self, n: int):
        return self.coerce(n)

    def unit_inverse(self, a):
        """Return ``x`` with ``x*a == 1`` or None."""
        raise NotImplementedError

    def involution(self, a):
        return a

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)

    def to_json(self) -> dict:
        raise NotImplementedError

    # -- module primitives --------------------------------------------------
    def basis(self, m: "Matrix") -> "BasisResult":
        raise NotImplementedError

    def reduce(self, b: "Matrix", br: "BasisResult") -> tuple["Matrix", "Matrix"]:
        """Reduce rows of ``b`` modulo the basis; returns ``(N, C)`` with
        ``N = b + C * br.basis``."""
        raise NotImplementedError

    def syzygies(self, m: "Matrix") -> "Matrix":
        """Generators of the left kernel ``{x : x m = 0}``."""
        raise NotImplementedError


@dataclass(frozen=True)
class BasisResult:
    basis: "Matrix"
    transform: "Matrix"
    # backend bookkeeping (pivot columns, leading terms, base-ring basis, ...)
    data: Any = None


@dataclass(frozen=True)
class ReductionResult:
    reduced: "Matrix"
    transform: "Matrix | None"
    basis: "Matrix"

    def is_zero(self) -> bool:
        return self.reduced.is_zero()


class Matrix:
    """Immutable dense matrix over a :class:`Ring`."""

    __slots__ = ("ring", "nrows", "ncols", "rows", "_hash")

    def __init__(self, ring: Ring, rows: Iterable[Iterable], ncols: int | None = None,
                 *, coerce: bool = True):
        if coerce:
            rows = tuple(tuple(ring.coerce(x) for x in r) for r in rows)
        else:
            rows = tuple(rows)
        if ncols is None:
            if not rows:
                raise ShapeError("column count required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ShapeError(f"ragged row of length {len(r)}, expected {ncols}")
        self.ring = ring
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = rows
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, ring, nrows, ncols):
        z = ring.zero
        return cls(ring, ((z,) * ncols for _ in range(nrows)), ncols, coerce=False)

    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero, ring.one
        return cls(ring, (tuple(o if i == j else z for j in range(n)) for i in range(n)),
                   n, coerce=False)

    @classmethod
    def from_json(cls, ring, data, ncols=None):
        rows = [tuple(ring.parse(x) if isinstance(x, str) else ring.coerce(x) for x in r)
                for r in data]
        return cls(ring, rows, ncols, coerce=False)

    def to_json(self):
        f = self.ring.format
        return [[f(x) for x in r] for r in self.rows]

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    # -- access -------------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def take_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.ring, (self.rows[i] for i in idx), self.ncols, coerce=False)

    def take_cols(self, idx: Sequence[int]) -> "Matrix":
        idx = list(idx)
        return Matrix(self.ring, (tuple(r[j] for j in idx) for r in self.rows), len(idx),
                      coerce=False)

    def row_slice(self, start, stop) -> "Matrix":
        return self.take_rows(range(start, stop))

    def col_slice(self, start, stop) -> "Matrix":
        return self.take_cols(range(start, stop))

    def row_is_zero(self, i) -> bool:
        iz = self.ring.is_zero
        return all(iz(x) for x in self.rows[i])

    def is_zero(self) -> bool:
        iz = self.ring.is_zero
        return all(iz(x) for r in self.rows for x in r)

    def nonzero_rows(self) -> list[int]:
        return [i for i in range(self.nrows) if not self.row_is_zero(i)]

    def drop_zero_rows(self) -> "Matrix":
        return self.take_rows(self.nonzero_rows())

    # -- arithmetic ---------------------------------------------------------
    def _check_ring(self, other):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def __add__(self, other):
        self._check_ring(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        add = self.ring.add
        return Matrix(self.ring, (tuple(map(add, r, s)) for r, s in zip(self.rows, other.rows)),
                      self.ncols, coerce=False)

    def __sub__(self, other):
        self._check_ring(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {self.shape} and {other.shape}")
        sub = self.ring.sub
        return Matrix(self.ring, (tuple(map(sub, r, s)) for r, s in zip(self.rows, other.rows)),
                      self.ncols, coerce=False)

    def __neg__(self):
        neg = self.ring.neg
        return Matrix(self.ring, (tuple(map(neg, r)) for r in self.rows), self.ncols,
                      coerce=False)

    def scale(self, c) -> "Matrix":
        mul = self.ring.mul
        c = self.ring.coerce(c)
        return Matrix(self.ring, (tuple(mul(c, x) for x in r) for r in self.rows), self.ncols,
                      coerce=False)

    def stack(self, other: "Matrix") -> "Matrix":
        return mat_stack(self, other)

    def augment(self, other: "Matrix") -> "Matrix":
        self._check_ring(other)
        if self.nrows != other.nrows:
            raise ShapeError(f"row mismatch {self.nrows} vs {other.nrows}")
        return Matrix(self.ring, (r + s for r, s in zip(self.rows, other.rows)),
                      self.ncols + other.ncols, coerce=False)

    def kron(self, other: "Matrix") -> "Matrix":
        return kronecker(self, other)

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, (self.col(j) for j in range(self.ncols)), self.nrows,
                      coerce=False)

    def theta_transpose(self) -> "Matrix":
        return theta_transpose(self)

    # -- identity -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.ring == other.ring and self.shape == other.shape
                and self.rows == other.rows)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.ncols, self.rows))
        return self._hash

    def __repr__(self):
        return f"Matrix({self.ring!r}, {self.to_json()}, ncols={self.ncols})"

    def __str__(self):
        if not self.nrows:
            return f"[0 x {self.ncols}]"
        return "[" + ", ".join("[" + ", ".join(self.ring.format(x) for x in r) + "]"
                               for r in self.rows) + "]"


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    a._check_ring(b)
    if a.ncols != b.nrows:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    ring = a.ring
    if b.ncols == 0:
        return Matrix(ring, ((),) * a.nrows, 0, coerce=False)
    if a.ncols == 0:
        return Matrix.zero(ring, a.nrows, b.ncols)
    cols = list(zip(*b.rows))
    dot = ring.dot
    return Matrix(ring, (tuple(dot(r, c) for c in cols) for r in a.rows), b.ncols,
                  coerce=False)


def mat_stack(top: Matrix, bottom: Matrix) -> Matrix:
    top._check_ring(bottom)
    if top.ncols != bottom.ncols:
        raise ShapeError(f"column mismatch {top.ncols} vs {bottom.ncols}")
    return Matrix(top.ring, top.rows + bottom.rows, top.ncols, coerce=False)


def block_diagonal(a: Matrix, b: Matrix) -> Matrix:
    ring = a.ring
    top = a.augment(Matrix.zero(ring, a.nrows, b.ncols))
    return top.stack(Matrix.zero(ring, b.nrows, a.ncols).augment(b))


def kronecker(a: Matrix, b: Matrix) -> Matrix:
    """``A (x) B := (a_ij B)``."""
    a._check_ring(b)
    ring = a.ring
    if not ring.commutative:
        raise RingMismatch("Kronecker product needs a commutative ring")
    mul = ring.mul
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append(tuple(mul(x, y) for x in ra for y in rb))
    return Matrix(ring, rows, a.ncols * b.ncols, coerce=False)


def theta_transpose(a: Matrix) -> Matrix:
    """``(A^theta)_{ij} = theta(A_{ji})``."""
    inv = a.ring.involution
    return Matrix(a.ring, (tuple(inv(a.rows[i][j]) for i in range(a.nrows))
                           for j in range(a.ncols)), a.nrows, coerce=False)


@lru_cache(maxsize=16384)
def _cached_basis(ring: Ring, m: Matrix) -> BasisResult:
    return ring.basis(m)


def basis_of_module(m: Matrix) -> BasisResult:
    """A reduction basis ``G`` of the row module of ``m`` with ``G = C_A m``."""
    return _cached_basis(m.ring, m)


def decide_zero(b: Matrix, m: Matrix, with_certificate: bool = False) -> ReductionResult:
    """Reduce the rows of ``b`` modulo the row module of ``m``.

    A row reduces to zero exactly when it lies in the row module. With a
    certificate, ``reduced = b + transform * basis``.
    """
    b._check_ring(m)
    if b.ncols != m.ncols:
        raise ShapeError(f"column mismatch {b.ncols} vs {m.ncols}")
    br = basis_of_module(m)
    n, c = m.ring.reduce(b, br)
    return ReductionResult(n, c if with_certificate else None, br.basis)


def syzygies_generators(m: Matrix, modulo: Matrix | None = None) -> Matrix:
    """Rows generating ``{x : x m = 0 mod <modulo>}``."""
    if modulo is None or modulo.nrows == 0:
        if modulo is not None and modulo.ncols != m.ncols:
            raise ShapeError(f"column mismatch {m.ncols} vs {modulo.ncols}")
        return _cached_syzygies(m.ring, m)
    m._check_ring(modulo)
    if modulo.ncols != m.ncols:
        raise ShapeError(f"column mismatch {m.ncols} vs {modulo.ncols}")
    s = _cached_syzygies(m.ring, m.stack(modulo))
    return _clean_rows(s.col_slice(0, m.nrows))


@lru_cache(maxsize=16384)
def _cached_syzygies(ring: Ring, m: Matrix) -> Matrix:
    if m.ncols == 0:
        return Matrix.identity(ring, m.nrows)
    if m.nrows == 0:
        return Matrix(ring, (), 0, coerce=False)
    return _clean_rows(ring.syzygies(m))


def _clean_rows(m: Matrix) -> Matrix:
    seen = set()
    keep = []
    for i, r in enumerate(m.rows):
        if m.row_is_zero(i) or r in seen:
            continue
        seen.add(r)
        keep.append(i)
    return m.take_rows(keep)


def clear_caches():
    _cached_basis.cache_clear()
    _cached_syzygies.cache_clear()
