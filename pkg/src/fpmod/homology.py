"""Pullbacks, resolutions of short exact sequences and long exact sequences."""
from __future__ import annotations

from dataclasses import dataclass

from .catalogue import COKERNEL, DEFECT, KERNEL, morphism_complex
from .errors import InternalInconsistency, NotExact, ShapeError, UnsupportedBackend
from .functors import CO, ComplexMorphism, ComplexRec, Functor, FunctorValue, functor_map
from .presentation import (MorphismRec, Presentation, canonical_decomposition,
                           is_zero_module, is_zero_morphism)
from .procedures import ResolutionRec, preimage, resolution_of_module, right_divide
from .ring import Matrix, block_diagonal


def direct_sum(a: Presentation, b: Presentation) -> Presentation:
    return Presentation(a.ring, a.gens + b.gens, block_diagonal(a.relations, b.relations))


def pullback(beta: MorphismRec, phi: MorphismRec):
    """Pullback of ``beta: B' -> B`` along ``phi: A -> B``.

    Returns ``(P, P -> A, P -> B')``.
    """
    if beta.target.gens != phi.target.gens:
        raise ShapeError("pullback needs a common target")
    a, bp = phi.source, beta.source
    s = direct_sum(a, bp)
    to_b = MorphismRec(s, phi.target, phi.matrix.stack(-beta.matrix))
    v = KERNEL.value((morphism_complex(to_b),))
    pa = MorphismRec(v.obj, a, v.iota.col_slice(0, a.gens))
    pb = MorphismRec(v.obj, bp, v.iota.col_slice(a.gens, a.gens + bp.gens))
    return v.obj, pa, pb


@dataclass(frozen=True)
class ShortExactSeq:
    mono: MorphismRec
    epi: MorphismRec

    def check(self):
        """Raise NotExact naming the first failing condition."""
        if self.mono.target != self.epi.source:
            raise ShapeError("mono and epi are not composable")
        if not self.mono.is_valid() or not self.epi.is_valid():
            raise NotExact("a map of the sequence is not a morphism", "maps")
        if not is_zero_module(KERNEL.obj((morphism_complex(self.mono),))):
            raise NotExact("first map is not injective", "left")
        if not is_zero_module(COKERNEL.obj((morphism_complex(self.epi),))):
            raise NotExact("second map is not surjective", "right")
        c = ComplexRec.from_maps(self.mono, self.epi)
        if not is_zero_morphism(self.mono.then(self.epi)):
            raise NotExact("composite is not zero", "middle")
        if not is_zero_module(DEFECT.obj((c,))):
            raise NotExact("kernel of the epi differs from the image of the mono", "middle")


@dataclass(frozen=True)
class ResolvedSES:
    """Free resolutions ``P'``, ``P``, ``P''`` with split levelwise inclusions
    and projections. ``maps[i]`` are the matrices of ``d_{i+1}``."""

    left: ResolutionRec
    right: ResolutionRec
    middle_module: Presentation
    augmentation: Matrix
    maps: tuple

    def rank(self, i):
        return self.left.rank(i) + self.right.rank(i)

    def free(self, i):
        return Presentation.free(self.middle_module.ring, self.rank(i) if i >= 0 else 0)

    def d(self, i):
        return self.maps[i - 1]

    def inclusion(self, i) -> Matrix:
        ring = self.middle_module.ring
        a, b = self.left.rank(i), self.right.rank(i)
        return Matrix.identity(ring, a).augment(Matrix.zero(ring, a, b))

    def projection(self, i) -> Matrix:
        ring = self.middle_module.ring
        a, b = self.left.rank(i), self.right.rank(i)
        return Matrix.zero(ring, a, b).stack(Matrix.identity(ring, b))


def resolve_short_exact_seq(s: ShortExactSeq, length: int) -> ResolvedSES:
    """Resolve ``0 -> M' -> M -> M'' -> 0`` simultaneously.

    The middle resolution has ``P_i = P'_i + P''_i`` and differentials
    ``[[d'_i, 0], [tau_i, d''_i]]``; ``tau_i`` comes from lifting the
    images of the generators of ``M''`` through the mono.
    """
    s.check()
    ring = s.mono.source.ring
    rl = resolution_of_module(s.mono.source, length)
    rr = resolution_of_module(s.epi.target, length)
    m = s.mono.target
    mono_u = rl.base_change.new_to_old @ s.mono.matrix
    epi_u = s.epi.matrix @ rr.base_change.old_to_new
    lift = preimage(Matrix.identity(ring, rr.module.gens), MorphismRec(m, rr.module, epi_u))
    if lift is None:
        raise InternalInconsistency("epi is not surjective on generators")
    aug = mono_u.stack(lift)
    maps = []
    tau = None
    for i in range(1, length + 2):
        dl, dr = rl.d(i), rr.d(i)
        if i == 1:
            tau = right_divide(-(dr @ lift), mono_u, m.relations)
        else:
            tau = right_divide(-(dr @ tau), rl.d(i - 1))
        if tau is None:
            raise InternalInconsistency(f"no connecting block at level {i}")
        top = dl.augment(Matrix.zero(ring, dl.nrows, dr.ncols))
        maps.append(top.stack(tau.augment(dr)))
    middle = Presentation(ring, aug.nrows, maps[0])
    return ResolvedSES(rl, rr, middle, aug, tuple(maps))


# -- homology of complexes -------------------------------------------------------

def _zero(ring):
    return Presentation.free(ring, 0)


def _window(c: ComplexRec, k: int) -> ComplexRec:
    """Three-term complex around ``objects[k]`` padded with zero modules."""
    obj = c.objects[k]
    ring = obj.ring
    inc = c.maps[k - 1] if k > 0 else MorphismRec.zero(_zero(ring), obj)
    out = c.maps[k] if k < len(c.maps) else MorphismRec.zero(obj, _zero(ring))
    return ComplexRec.from_maps(inc, out)


def homology_at(c: ComplexRec, k: int) -> FunctorValue:
    """Homology at ``objects[k]`` with its embedding into the cokernel of the incoming map."""
    return DEFECT.value((_window(c, k),))


def homology_map(f: MorphismRec, c: ComplexRec, d: ComplexRec, k: int) -> MorphismRec:
    """Map induced on homology at position ``k`` by the component ``f``."""
    chain = ComplexMorphism.single(_window(c, k), _window(d, k), 2, f)
    return DEFECT.map(0, chain, ())


@dataclass(frozen=True)
class ExactnessReport:
    position: int
    defect: Presentation
    exact: bool

    def to_json(self):
        try:
            shape = canonical_decomposition(self.defect).to_json()
        except UnsupportedBackend:
            shape = self.defect.to_json()
        return {"position": self.position, "exact": self.exact, "defect": shape}


def verify_exactness(c: ComplexRec) -> list[ExactnessReport]:
    """Defect at every inner position of ``c``."""
    out = []
    for k in range(1, len(c.objects) - 1):
        d = DEFECT.obj((ComplexRec.from_maps(c.maps[k - 1], c.maps[k]),))
        out.append(ExactnessReport(k, d, is_zero_module(d)))
    return out


@dataclass(frozen=True)
class LESEntry:
    module: Presentation
    map: MorphismRec
    is_connecting: bool
    label: str

    def to_json(self):
        try:
            mod = canonical_decomposition(self.module).to_json()
        except UnsupportedBackend:
            mod = self.module.to_json()
        return {"label": self.label, "module": mod, "map": self.map.matrix.to_json(),
                "is_connecting": self.is_connecting}


@dataclass(frozen=True)
class LongExactSeq:
    """``entries[t].map`` goes from ``entries[t].module`` to the next module;
    ``incoming`` ends at the first module and the last entry's map leaves the
    sequence, so exactness can be checked at every listed module."""

    incoming: MorphismRec
    entries: tuple

    def modules(self):
        return [e.module for e in self.entries]

    def maps(self):
        return [self.incoming] + [e.map for e in self.entries]

    def defects(self) -> list[Presentation]:
        ms = self.maps()
        return [DEFECT.obj((ComplexRec.from_maps(a, b),)) for a, b in zip(ms, ms[1:])]

    def is_exact(self) -> bool:
        return all(is_zero_module(d) for d in self.defects())

    def to_json(self):
        return [e.to_json() for e in self.entries]


def long_exact_sequence(a: ComplexRec, b: ComplexRec, c: ComplexRec, f, g,
                        first: int, last: int, labels=None,
                        names=("A", "B", "C")) -> LongExactSeq:
    """Homology sequence of a levelwise short exact ``0 -> A -f-> B -g-> C -> 0``.

    ``f[k]`` and ``g[k]`` are the components at ``objects[k]``. Positions
    ``first..last`` are listed; the connecting map at ``k`` runs
    ``H(C)_k -> H(A)_{k+1}`` following the arrows.
    """
    n = len(a.objects)
    ring = a.objects[0].ring
    labels = labels or (lambda k: str(k))

    def delta(k):
        hc, ha = homology_at(c, k), homology_at(a, k + 1)
        lifted = preimage(hc.iota, g[k])
        if lifted is None:
            raise InternalInconsistency(f"cycles do not lift at position {k}")
        pushed = lifted @ b.maps[k].matrix
        back = preimage(pushed, f[k + 1])
        if back is None:
            raise InternalInconsistency(f"boundary not in the image at position {k}")
        coords = right_divide(back, ha.iota, ha.hull.relations)
        if coords is None:
            raise InternalInconsistency(f"connecting image is not a cycle at position {k}")
        return MorphismRec(hc.obj, ha.obj, coords)

    if first > 0:
        incoming = delta(first - 1)
    else:
        incoming = MorphismRec.zero(_zero(ring), homology_at(a, first).obj)
    entries = []
    for k in range(first, last + 1):
        hf = homology_map(f[k], a, b, k)
        hg = homology_map(g[k], b, c, k)
        if k + 1 < n:
            dk = delta(k)
        else:
            dk = MorphismRec.zero(hg.target, _zero(ring))
        lab = labels(k)
        entries.append(LESEntry(hf.source, hf, False, f"{names[0]}[{lab}]"))
        entries.append(LESEntry(hg.source, hg, False, f"{names[1]}[{lab}]"))
        entries.append(LESEntry(hg.target, dk, True, f"{names[2]}[{lab}]"))
    return LongExactSeq(incoming, tuple(entries))


def long_exact_homology_seq(f: Functor, s: ShortExactSeq, top_degree: int,
                            fixed=(), slot: int = 0, verify: bool = True) -> LongExactSeq:
    """``L_q F`` of ``0 -> M' -> M -> M'' -> 0`` for ``q = top_degree .. 0``
    (covariant ``F``), or ``R^q F`` for ``q = 0 .. top_degree`` (contravariant).

    Entries run along the arrows of the sequence.
    """
    fixed = tuple(fixed)
    res = resolve_short_exact_seq(s, top_degree + 1)
    top = top_degree + 2
    co = f.variance[slot] == CO

    def free(which, i):
        if which == "L":
            return res.left.free(i)
        if which == "R":
            return res.right.free(i)
        return res.free(i)

    def d(which, i):
        if which == "L":
            return res.left.d(i)
        if which == "R":
            return res.right.d(i)
        return res.d(i)

    def fmap(m):
        return functor_map(f, m, fixed, slot)

    def complex_of(which):
        # arrow order; degree i sits at position top - i (covariant) or i
        ms = []
        for i in range(1, top + 1):
            ms.append(fmap(MorphismRec(free(which, i), free(which, i - 1), d(which, i))))
        if co:
            return ComplexRec.from_maps(*reversed(ms))
        return ComplexRec.from_maps(*ms)

    cl, cm, cr = complex_of("L"), complex_of("M"), complex_of("R")
    degrees = list(range(top, -1, -1)) if co else list(range(0, top + 1))
    incl, proj = {}, {}
    for pos, i in enumerate(degrees):
        fi = fmap(MorphismRec(free("L", i), free("M", i), res.inclusion(i)))
        fp = fmap(MorphismRec(free("M", i), free("R", i), res.projection(i)))
        incl[pos], proj[pos] = fi, fp
    if co:
        a, b, c = cl, cm, cr
        fa, ga = incl, proj
        first, last = 2, top
        label = lambda k: str(top - k)  # noqa: E731
    else:
        a, b, c = cr, cm, cl
        fa, ga = proj, incl
        first, last = 0, top_degree
        label = lambda k: str(k)  # noqa: E731
    names = ("M'", "M", "M''") if co else ("M''", "M", "M'")
    les = long_exact_sequence(a, b, c, fa, ga, first, last, label, names)
    if verify:
        for t, dmod in enumerate(les.defects()):
            if not is_zero_module(dmod):
                raise NotExact(f"long exact sequence fails at entry {t}", t)
    return les
