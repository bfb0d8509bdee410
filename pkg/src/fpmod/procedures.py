"""Linear systems, lifts, resolutions and subfactors built on the primitives."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import ShapeError
from .presentation import BaseChange, MorphismRec, Presentation, eliminate_units
from .ring import Matrix, basis_of_module, decide_zero, syzygies_generators


def right_divide(b: Matrix, a: Matrix, l: Matrix | None = None, *, with_y: bool = False):
    """Solve ``B = X A`` modulo the rows of ``L``.

    Returns ``X`` (or ``(X, Y)`` with ``B = X A + Y L`` exactly when
    ``with_y``), or None when the system has no solution.
    """
    if b.ncols != a.ncols or (l is not None and l.ncols != a.ncols):
        raise ShapeError(f"right_divide: column mismatch {b.shape}, {a.shape}"
                         + (f", {l.shape}" if l is not None else ""))
    b._check_ring(a)
    ring = a.ring
    stacked = a if l is None else a.stack(l)
    br = basis_of_module(stacked)
    n, c = ring.reduce(b, br)
    if not n.is_zero():
        return None
    full = -(c @ br.transform)
    x = full.col_slice(0, a.nrows)
    if with_y:
        return x, full.col_slice(a.nrows, stacked.nrows)
    return x


def complete_im_sq(alpha: MorphismRec, phi: MorphismRec, beta: MorphismRec):
    """``psi: alpha.source -> beta.source`` with ``psi beta = alpha phi``."""
    x = right_divide(alpha.matrix @ phi.matrix, beta.matrix, phi.target.relations)
    if x is None:
        return None
    return MorphismRec(alpha.source, beta.source, x)


def leftinverse(beta: MorphismRec):
    """``psi: beta.target -> beta.source`` with ``psi beta`` the identity of the target."""
    t = beta.target
    x = right_divide(Matrix.identity(t.ring, t.gens), beta.matrix, t.relations)
    if x is None:
        return None
    psi = MorphismRec(t, beta.source, x)
    if not decide_zero(t.relations @ x, beta.source.relations).reduced.is_zero():
        return None
    return psi


def preimage(b: Matrix, alpha: MorphismRec):
    """Rows ``X`` with ``X alpha = b`` modulo the target relations."""
    return right_divide(b, alpha.matrix, alpha.target.relations)


@dataclass(frozen=True)
class ResolutionRec:
    """Free resolution ``... -> R^{l_2} -> R^{l_1} -> R^{l_0}`` of ``module``.

    ``module`` is the unit-free presentation actually resolved and
    ``base_change`` relates it to the presentation that was passed in.
    ``maps[i]`` is the matrix of ``d_{i+1}: P_{i+1} -> P_i``.
    """

    original: Presentation
    module: Presentation
    base_change: BaseChange
    maps: tuple

    def rank(self, i: int) -> int:
        if i == 0:
            return self.module.gens
        if i - 1 < len(self.maps):
            return self.maps[i - 1].nrows
        return 0

    def free(self, i: int) -> Presentation:
        return Presentation.free(self.module.ring, self.rank(i) if i >= 0 else 0)

    def d(self, i: int) -> Matrix:
        """Matrix of ``d_i: P_i -> P_{i-1}`` (``i >= 1``)."""
        ring = self.module.ring
        if i - 1 < len(self.maps):
            return self.maps[i - 1]
        return Matrix.zero(ring, 0, self.rank(i - 1))

    @property
    def augmented(self):
        return self.module


def _unit_column(m: Matrix):
    ring = m.ring
    for j in range(m.ncols):
        for i in range(m.nrows):
            x = m.rows[i][j]
            if not ring.is_zero(x) and ring.unit_inverse(x) is not None:
                return j
    return None


@lru_cache(maxsize=4096)
def resolution_of_module(p: Presentation, length: int = 1) -> ResolutionRec:
    """Resolve ``p`` computing ``length`` syzygy matrices beyond the relations."""
    if length < 0:
        raise ValueError("length must be nonnegative")
    ring = p.ring
    mod, bc = eliminate_units(p)
    rel = mod.relations.drop_zero_rows()
    maps = [rel]
    for _ in range(length):
        prev = maps[-1]
        if prev.nrows == 0:
            maps.append(Matrix.zero(ring, 0, 0))
            continue
        for _ in range(prev.nrows + 1):
            nxt = syzygies_generators(prev)
            j = _unit_column(nxt)
            if j is None:
                break
            # row j of prev is redundant
            prev = prev.take_rows([k for k in range(prev.nrows) if k != j])
        maps[-1] = prev
        maps.append(nxt)
    mod = Presentation(ring, mod.gens, maps[0])
    bc = BaseChange(bc.old, mod, bc.old_to_new, bc.new_to_old)
    return ResolutionRec(p, mod, bc, tuple(maps))


def subfactor_module(m1: Matrix, m2: Matrix) -> tuple[Presentation, Matrix]:
    """Presentation of ``(<m1> + <m2>) / <m2>`` and its generators ``N``."""
    if m1.ncols != m2.ncols:
        raise ShapeError(f"subfactor: column mismatch {m1.ncols} vs {m2.ncols}")
    ring = m1.ring
    if m2.nrows:
        n = decide_zero(m1, m2).reduced.drop_zero_rows()
        b = basis_of_module(m2).basis
    else:
        n = m1.drop_zero_rows()
        b = m2
    rel = syzygies_generators(n, b)
    return Presentation(ring, n.nrows, rel), n
