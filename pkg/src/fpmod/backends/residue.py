"""Residue class rings ``R/I`` over any supported base ring.

Elements are canonical representatives: base elements reduced modulo a
basis of the ideal. Module computations over ``R/I`` run in the base ring on
the matrix with ``I_n (x) ideal`` appended below.
"""
from __future__ import annotations

from ..errors import UnsupportedBackend
from ..ring import BasisResult, Matrix, Ring, kronecker
from .euclidean import Integers, extended_gcd


class ResidueRing(Ring):
    def __init__(self, base: Ring, ideal):
        if isinstance(base, ResidueRing):
            raise UnsupportedBackend("nested residue class rings are not supported")
        self.base = base
        gens = [base.coerce(g) for g in ideal]
        gens = [g for g in gens if not base.is_zero(g)]
        self.ideal = Matrix(base, ((g,) for g in gens), 1, coerce=False)
        self._ideal_basis = base.basis(self.ideal) if gens else None
        self._modulus = None
        if isinstance(base, Integers) and self._ideal_basis is not None:
            self._modulus = self._ideal_basis.basis.rows[0][0]
        self.commutative = base.commutative
        self._zero = self.normalize(base.zero)
        self._one = self.normalize(base.one)

    def _key(self):
        return (self.base, self.ideal.rows)

    def __repr__(self):
        return f"ResidueRing({self.base!r}, {[self.base.format(r[0]) for r in self.ideal.rows]})"

    def normalize(self, a):
        if self._modulus is not None:
            return a % self._modulus
        if self._ideal_basis is None:
            return a
        n, _ = self.base.reduce(Matrix(self.base, ((a,),), 1, coerce=False), self._ideal_basis)
        return n.rows[0][0]

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def coerce(self, x):
        if isinstance(x, str):
            return self.parse(x)
        return self.normalize(self.base.coerce(x))

    def add(self, a, b):
        return self.normalize(self.base.add(a, b))

    def sub(self, a, b):
        return self.normalize(self.base.sub(a, b))

    def neg(self, a):
        return self.normalize(self.base.neg(a))

    def mul(self, a, b):
        return self.normalize(self.base.mul(a, b))

    def dot(self, xs, ys):
        return self.normalize(self.base.dot(xs, ys))

    def is_zero(self, a):
        return a == self._zero

    def unit_inverse(self, a):
        if self._modulus is not None:
            g, x, _ = extended_gcd(a, self._modulus)
            return x % self._modulus if g == 1 else None
        # solve x*a = 1 modulo the ideal in the base ring
        stacked = Matrix(self.base, ((a,),), 1, coerce=False).stack(self.ideal)
        br = self.base.basis(stacked)
        n, c = self.base.reduce(Matrix(self.base, ((self.base.one,),), 1, coerce=False), br)
        if not n.is_zero():
            return None
        x = (-(c @ br.transform)).rows[0][0]
        return self.normalize(x)

    def involution(self, a):
        return self.normalize(self.base.involution(a))

    def parse(self, text):
        return self.normalize(self.base.parse(text))

    def format(self, a):
        return self.base.format(a)

    def to_json(self):
        return {"type": "residue", "base": self.base.to_json(),
                "ideal": [self.base.format(r[0]) for r in self.ideal.rows]}

    # -- module primitives -------------------------------------------------
    def lift(self, m: Matrix) -> Matrix:
        """``m`` over the base ring with the ideal relations appended."""
        lifted = Matrix(self.base, m.rows, m.ncols, coerce=False)
        if self.ideal.nrows and m.ncols:
            lifted = lifted.stack(kronecker(Matrix.identity(self.base, m.ncols), self.ideal))
        return lifted

    def _down(self, m: Matrix) -> Matrix:
        norm = self.normalize
        return Matrix(self, (tuple(norm(x) for x in r) for r in m.rows), m.ncols, coerce=False)

    def basis(self, m: Matrix) -> BasisResult:
        base_br = self.base.basis(self.lift(m))
        G = self._down(base_br.basis)
        keep = G.nonzero_rows()
        C = self._down(base_br.transform.col_slice(0, m.nrows)).take_rows(keep)
        return BasisResult(G.take_rows(keep), C, (base_br, keep))

    def reduce(self, b: Matrix, br: BasisResult):
        base_br, keep = br.data
        n, c = self.base.reduce(Matrix(self.base, b.rows, b.ncols, coerce=False), base_br)
        return self._down(n), self._down(c).take_cols(keep)

    def syzygies(self, m: Matrix) -> Matrix:
        s = self.base.syzygies(self.lift(m))
        return self._down(s.col_slice(0, m.nrows))
