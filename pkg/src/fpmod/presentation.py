"""Finitely presented modules, their morphisms and generator clean-up."""
from __future__ import annotations

from dataclasses import dataclass, field

from .backends import Integers, PrimeField, Rationals, ResidueRing, smith_normal_form
from .errors import RingMismatch, ShapeError, UnsupportedBackend
from .ring import Matrix, Ring, basis_of_module, decide_zero


@dataclass(frozen=True)
class Presentation:
    """``R^{1 x gens} / R^{1 x l1} relations``."""

    ring: Ring
    gens: int
    relations: Matrix

    def __post_init__(self):
        if self.relations.ncols != self.gens:
            raise ShapeError(f"relations have {self.relations.ncols} columns, "
                             f"expected {self.gens}")
        if self.relations.ring != self.ring:
            raise RingMismatch("relations live over a different ring")

    @classmethod
    def free(cls, ring, n):
        return cls(ring, n, Matrix.zero(ring, 0, n))

    @classmethod
    def cyclic(cls, ring, *orders):
        """``R/(a_1) + ... + R/(a_k)``; an order of 0 gives a free summand."""
        n = len(orders)
        z = ring.zero
        rows = [tuple(ring.coerce(a) if i == j else z for j in range(n))
                for i, a in enumerate(orders) if not ring.is_zero(ring.coerce(a))]
        return cls(ring, n, Matrix(ring, rows, n, coerce=False))

    @classmethod
    def from_rows(cls, ring, rows, gens=None):
        m = Matrix(ring, rows, gens)
        return cls(ring, m.ncols, m)

    def identity(self) -> "MorphismRec":
        return MorphismRec(self, self, Matrix.identity(self.ring, self.gens))

    def is_zero(self) -> bool:
        return is_zero_module(self)

    def to_json(self):
        return {"ring": self.ring.to_json(), "gens": self.gens,
                "relations": self.relations.to_json()}

    @classmethod
    def from_json(cls, ring, doc):
        gens = int(doc["gens"])
        return cls(ring, gens, Matrix.from_json(ring, doc.get("relations", []), gens))

    def __str__(self):
        return f"<{self.gens} gens | {self.relations}>"


@dataclass(frozen=True)
class MorphismRec:
    source: Presentation
    target: Presentation
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.source.gens, self.target.gens):
            raise ShapeError(f"morphism matrix {self.matrix.shape} does not fit "
                             f"{self.source.gens} -> {self.target.gens}")

    def then(self, other: "MorphismRec") -> "MorphismRec":
        """``self`` followed by ``other``."""
        return MorphismRec(self.source, other.target, self.matrix @ other.matrix)

    def is_valid(self) -> bool:
        return morphism_is_valid(self)

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, Matrix.zero(source.ring, source.gens, target.gens))


@dataclass(frozen=True)
class BaseChange:
    """Mutually inverse generator maps between an old and a new presentation."""

    old: Presentation
    new: Presentation
    old_to_new: Matrix
    new_to_old: Matrix

    @classmethod
    def identity(cls, p):
        i = Matrix.identity(p.ring, p.gens)
        return cls(p, p, i, i)

    def then(self, other: "BaseChange") -> "BaseChange":
        return BaseChange(self.old, other.new, self.old_to_new @ other.old_to_new,
                          other.new_to_old @ self.new_to_old)


def is_zero_module(p: Presentation) -> bool:
    if p.gens == 0:
        return True
    return decide_zero(Matrix.identity(p.ring, p.gens), p.relations).reduced.is_zero()


def morphism_is_valid(phi: MorphismRec) -> bool:
    if phi.source.ring != phi.target.ring:
        raise RingMismatch("source and target over different rings")
    return decide_zero(phi.source.relations @ phi.matrix,
                       phi.target.relations).reduced.is_zero()


def morphisms_equal(a: MorphismRec, b: MorphismRec) -> bool:
    if a.matrix.shape != b.matrix.shape:
        raise ShapeError(f"cannot compare {a.matrix.shape} with {b.matrix.shape}")
    return decide_zero(a.matrix - b.matrix, a.target.relations).reduced.is_zero()


def is_zero_morphism(a: MorphismRec) -> bool:
    return decide_zero(a.matrix, a.target.relations).reduced.is_zero()


def presentations_equal(a: Presentation, b: Presentation) -> bool:
    if a.gens != b.gens or a.ring != b.ring:
        return False
    return (decide_zero(a.relations, b.relations).reduced.is_zero()
            and decide_zero(b.relations, a.relations).reduced.is_zero())


def _find_unit(m: Matrix):
    ring = m.ring
    for j in range(m.ncols):
        for i in range(m.nrows):
            x = m.rows[i][j]
            if not ring.is_zero(x):
                inv = ring.unit_inverse(x)
                if inv is not None:
                    return i, j, inv
    return None


def eliminate_units(p: Presentation) -> tuple[Presentation, BaseChange]:
    ring = p.ring
    bc = BaseChange.identity(p)
    cur = p
    while True:
        hit = _find_unit(cur.relations)
        if hit is None:
            return cur, bc
        i, j, inv = hit
        n = cur.gens
        keep = [k for k in range(n) if k != j]
        r = cur.relations.rows[i]
        # generator j = -u^{-1} * (sum of the other entries of relation i)
        o2n = []
        for k in range(n):
            if k == j:
                o2n.append(tuple(ring.neg(ring.mul(inv, r[c])) for c in keep))
            else:
                o2n.append(tuple(ring.one if c == k else ring.zero for c in keep))
        old_to_new = Matrix(ring, o2n, n - 1, coerce=False)
        new_to_old = Matrix.identity(ring, n).take_rows(keep)
        rel = (cur.relations @ old_to_new).take_rows(
            [k for k in range(cur.relations.nrows) if k != i])
        new = Presentation(ring, n - 1, rel)
        bc = bc.then(BaseChange(cur, new, old_to_new, new_to_old))
        cur = new


def _dedupe(m: Matrix) -> Matrix:
    seen, keep = set(), []
    for i, r in enumerate(m.rows):
        if r not in seen and not m.row_is_zero(i):
            seen.add(r)
            keep.append(i)
    return m.take_rows(keep)


def better_generators(p: Presentation) -> tuple[Presentation, BaseChange]:
    """Fewer generators and tidier relations for an isomorphic module."""
    bc = BaseChange.identity(p)
    cur = p
    for _ in range(64):
        nxt, step = eliminate_units(cur)
        rel = _dedupe(nxt.relations)
        if nxt.ring.reduced_basis and rel.nrows:
            rel = basis_of_module(rel).basis
        nxt = Presentation(nxt.ring, nxt.gens, rel)
        bc = bc.then(BaseChange(step.old, nxt, step.old_to_new, step.new_to_old))
        if nxt == cur:
            break
        cur = nxt
    return nxt, bc


@dataclass(frozen=True)
class Decomposition:
    """Invariant factors (non-units) plus free rank."""

    factors: tuple
    rank: int
    ring: Ring = field(compare=False, default=None)

    def to_json(self):
        f = self.ring.format if self.ring is not None else str
        return {"factors": [f(x) if not isinstance(x, int) else x for x in self.factors],
                "rank": self.rank}

    def order(self):
        """Cardinality for finite modules over Z, else None."""
        if self.rank:
            return None
        out = 1
        for d in self.factors:
            out *= d
        return out

    def is_zero(self):
        return self.rank == 0 and not self.factors


def canonical_decomposition(p: Presentation) -> Decomposition:
    ring = p.ring
    rel = p.relations
    if isinstance(ring, ResidueRing) and isinstance(ring.base, Integers):
        base = ring.base
        rel = Matrix(base, rel.rows, p.gens, coerce=False)
        n = ring._modulus
        if n is not None:
            rel = rel.stack(Matrix.identity(base, p.gens).scale(n))
        ring = base
    elif not isinstance(ring, (Integers, Rationals, PrimeField)):
        raise UnsupportedBackend(f"no canonical decomposition over {ring!r}")
    if rel.nrows == 0 or p.gens == 0:
        return Decomposition((), p.gens, ring)
    diag = smith_normal_form(rel).diag
    nonzero = [d for d in diag if not ring.is_zero(d)]
    factors = tuple(d for d in nonzero if ring.unit_inverse(d) is None)
    return Decomposition(factors, p.gens - len(nonzero), ring)
