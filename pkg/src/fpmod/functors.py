"""Functors as values: basic functors with hulls, composites and derivations.

A basic functor supplies its object part together with a hull functor and a
natural embedding ``iota: F(X) -> Hull(X)``. The morphism part is then never
written by hand: ``F(phi)`` is the unique completion of the square

    F(S) --iota--> Hull(S)
     |               | Hull(phi)
    F(T) --iota--> Hull(T)

found by ``right_divide``. Composites and derived functors dispatch to their
parts, so new functors need no morphism code.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InternalInconsistency, InvalidMorphism, ShapeError
from .presentation import MorphismRec, Presentation, better_generators, morphisms_equal
from .procedures import ResolutionRec, resolution_of_module, right_divide
from .ring import Matrix

CO, CONTRA = 1, -1


# -- complexes ---------------------------------------------------------------

@dataclass(frozen=True)
class ComplexRec:
    """``C_k -> C_{k-1} -> ... -> C_1`` stored in arrow order.

    ``objects[0]`` is ``C_k`` and ``maps[t]`` goes ``objects[t] -> objects[t+1]``.
    """

    objects: tuple
    maps: tuple

    def __post_init__(self):
        if len(self.maps) != max(len(self.objects) - 1, 0):
            raise ShapeError("a complex with k objects needs k - 1 maps")
        for t, m in enumerate(self.maps):
            if m.source != self.objects[t] or m.target != self.objects[t + 1]:
                raise ShapeError(f"map {t} does not connect consecutive objects")

    @classmethod
    def from_maps(cls, *maps: MorphismRec):
        objs = (maps[0].source,) + tuple(m.target for m in maps)
        return cls(objs, tuple(maps))

    @property
    def length(self):
        return len(self.objects)

    def is_complex(self) -> bool:
        for a, b in zip(self.maps, self.maps[1:]):
            if not morphisms_equal(a.then(b), MorphismRec.zero(a.source, b.target)):
                return False
        return True


def obj_slice(c: ComplexRec, i: int) -> Presentation:
    """``C_i`` (1-based from the end of the arrows)."""
    k = c.length
    if not 1 <= i <= k:
        raise IndexError(f"object index {i} outside 1..{k}")
    return c.objects[k - i]


def mor_slice(c: ComplexRec, i: int) -> MorphismRec:
    """The map ``C_{i+1} -> C_i``."""
    k = c.length
    if not 1 <= i < k:
        raise IndexError(f"morphism index {i} outside 1..{k - 1}")
    return c.maps[k - i - 1]


@dataclass(frozen=True)
class ComplexMorphism:
    """A chain map; ``components`` follow ``source.objects`` and may hold None
    where a component is not needed by the functor at hand."""

    source: ComplexRec
    target: ComplexRec
    components: tuple

    def at(self, i: int) -> MorphismRec:
        m = self.components[self.source.length - i]
        if m is None:
            raise InvalidMorphism(f"chain map has no component at position {i}")
        return m

    @classmethod
    def single(cls, source, target, i, morphism):
        comps = [None] * source.length
        comps[source.length - i] = morphism
        return cls(source, target, tuple(comps))

    @classmethod
    def identity(cls, c: ComplexRec):
        return cls(c, c, tuple(o.identity() for o in c.objects))

    def then(self, other: "ComplexMorphism") -> "ComplexMorphism":
        comps = tuple(None if a is None or b is None else a.then(b)
                      for a, b in zip(self.components, other.components))
        return ComplexMorphism(self.source, other.target, comps)


# -- functor values ------------------------------------------------------------

@dataclass(frozen=True)
class FunctorValue:
    """``F(X)`` with its natural embedding into ``Hull(X)``."""

    obj: Presentation
    hull: Presentation
    iota: Matrix


MODULE = "module"


class Functor:
    """Common interface. ``kinds[s]`` is MODULE or the length of the complexes
    accepted in slot ``s``."""

    name = "F"
    arity = 1
    variance: tuple = (CO,)
    kinds: tuple = (MODULE,)

    def obj(self, args: tuple) -> Presentation:
        return self.value(args).obj

    def value(self, args: tuple) -> FunctorValue:
        raise NotImplementedError

    def map(self, slot: int, phi, args: tuple) -> MorphismRec:
        raise NotImplementedError

    def __repr__(self):
        return self.name

    def _check_args(self, args):
        if len(args) != self.arity:
            raise ShapeError(f"{self.name} takes {self.arity} arguments, got {len(args)}")


def _with(args, slot, x):
    return args[:slot] + (x,) + args[slot + 1:]


@lru_cache(maxsize=65536)
def _cached_value(f: Functor, args: tuple) -> FunctorValue:
    return f._value(args)


@lru_cache(maxsize=65536)
def _cached_map(f: Functor, slot: int, phi, args: tuple) -> MorphismRec:
    return f._map(slot, phi, args)


class BasicFunctor(Functor):
    """Subclasses implement ``_value(args)`` and ``hull_map(slot, phi, src, tgt)``;
    the latter maps ``Hull`` of the functor's source value to ``Hull`` of its
    target value (swapped for contravariant slots)."""

    def value(self, args):
        self._check_args(args)
        return _cached_value(self, tuple(args))

    def map(self, slot, phi, args):
        return _cached_map(self, slot, phi, tuple(args))

    def _map(self, slot, phi, args):
        src, tgt = _with(args, slot, phi.source), _with(args, slot, phi.target)
        if self.variance[slot] == CO:
            s, t = self.value(src), self.value(tgt)
        else:
            s, t = self.value(tgt), self.value(src)
        h = self.hull_map(slot, phi, src, tgt)
        x = right_divide(s.iota @ h, t.iota, t.hull.relations)
        if x is None:
            raise InternalInconsistency(f"{self.name}: hull square not completable")
        return MorphismRec(s.obj, t.obj, x)

    def hull_map(self, slot, phi, src, tgt) -> Matrix:
        raise NotImplementedError


def self_hull(raw: Presentation) -> FunctorValue:
    """Value for functors that are their own hull: clean up generators and
    embed through the base change."""
    obj, bc = better_generators(raw)
    return FunctorValue(obj, raw, bc.new_to_old)


class IdentityFunctor(BasicFunctor):
    name = "Id"

    def _value(self, args):
        m = args[0]
        return FunctorValue(m, m, Matrix.identity(m.ring, m.gens))

    def hull_map(self, slot, phi, src, tgt):
        return phi.matrix


class CurriedFunctor(Functor):
    """Freeze every slot but one of a multi-argument functor."""

    def __init__(self, base: Functor, slot: int, fixed: tuple):
        if len(fixed) != base.arity - 1:
            raise ShapeError(f"{base.name} needs {base.arity - 1} fixed arguments")
        self.base, self.slot, self.fixed = base, slot, tuple(fixed)
        self.name = f"{base.name}[{slot}]"
        self.arity = 1
        self.variance = (base.variance[slot],)
        self.kinds = (base.kinds[slot],)

    def _full(self, x):
        return self.fixed[:self.slot] + (x,) + self.fixed[self.slot:]

    def value(self, args):
        self._check_args(args)
        return self.base.value(self._full(args[0]))

    def map(self, slot, phi, args):
        return self.base.map(self.slot, phi, self._full(None))


def curry(f: Functor, slot: int, fixed: tuple) -> Functor:
    return CurriedFunctor(f, slot, fixed) if f.arity > 1 else f


class ComposedFunctor(Functor):
    """``outer`` with ``inner`` plugged into ``slot``."""

    def __init__(self, outer: Functor, slot: int, inner: Functor):
        if not 0 <= slot < outer.arity:
            raise IndexError(f"slot {slot} outside 0..{outer.arity - 1}")
        if outer.kinds[slot] != MODULE:
            raise ShapeError("only module slots can receive a composed functor")
        self.outer, self.slot, self.inner = outer, slot, inner
        self.name = f"Compose({outer.name},{slot},{inner.name})"
        self.arity = outer.arity - 1 + inner.arity
        v = outer.variance[slot]
        self.variance = (outer.variance[:slot] + tuple(v * x for x in inner.variance)
                         + outer.variance[slot + 1:])
        self.kinds = outer.kinds[:slot] + inner.kinds + outer.kinds[slot + 1:]

    def _split(self, args):
        k = self.inner.arity
        return args[self.slot:self.slot + k], args[:self.slot], args[self.slot + k:]

    def value(self, args):
        self._check_args(args)
        inner_args, before, after = self._split(tuple(args))
        return self.outer.value(before + (self.inner.obj(inner_args),) + after)

    def map(self, slot, phi, args):
        args = tuple(args)
        inner_args, before, after = self._split(args)
        k = self.inner.arity
        if self.slot <= slot < self.slot + k:
            psi = self.inner.map(slot - self.slot, phi, inner_args)
            return self.outer.map(self.slot, psi, before + (None,) + after)
        filled = before + (self.inner.obj(inner_args),) + after
        s = slot if slot < self.slot else slot - k + 1
        return self.outer.map(s, phi, filled)


def compose_functors(outer: Functor, slot: int, inner: Functor) -> Functor:
    return ComposedFunctor(outer, slot, inner)


# -- derivation ------------------------------------------------------------------

GENERAL = "general"
RIGHT_EXACT_COVARIANT = "right_exact_covariant"
LEFT_EXACT_CONTRAVARIANT = "left_exact_contravariant"


@dataclass(frozen=True)
class LiftedChainMap:
    """``levels[i]: P_i(source) -> P_i(target)`` lifting a module map."""

    source: ResolutionRec
    target: ResolutionRec
    levels: tuple


def resolution_of_seq(phi: MorphismRec, q: int, length: int | None = None) -> LiftedChainMap:
    """Lift ``phi`` through free resolutions of its source and target."""
    length = q if length is None else length
    rs = resolution_of_module(phi.source, length)
    rt = resolution_of_module(phi.target, length)
    # phi in the unit-free coordinates of both resolutions
    cur = rs.base_change.new_to_old @ phi.matrix @ rt.base_change.old_to_new
    levels = [cur]
    for i in range(1, q + 1):
        ds, dt = rs.d(i), rt.d(i)
        x = right_divide(ds @ cur, dt)
        if x is None:
            raise InternalInconsistency(f"lift through free resolution failed at level {i}")
        levels.append(x)
        cur = x
    return LiftedChainMap(rs, rt, tuple(levels))


class DerivedFunctor(Functor):
    """``L_q`` (covariant slot) or ``R^q`` (contravariant slot) of ``base``."""

    def __init__(self, base: Functor, slot: int, q: int, flavor: str = GENERAL):
        if base.kinds[slot] != MODULE:
            raise ShapeError("derivation needs a module slot")
        if q < 0:
            raise ValueError("degree must be nonnegative")
        v = base.variance[slot]
        if flavor not in (GENERAL, RIGHT_EXACT_COVARIANT, LEFT_EXACT_CONTRAVARIANT):
            raise ValueError(f"unknown flavor {flavor!r}")
        if flavor == RIGHT_EXACT_COVARIANT and v != CO:
            raise ValueError("right-exact flavor needs a covariant slot")
        if flavor == LEFT_EXACT_CONTRAVARIANT and v != CONTRA:
            raise ValueError("left-exact flavor needs a contravariant slot")
        self.base, self.slot, self.q, self.flavor = base, slot, q, flavor
        tag = "L" if v == CO else "R"
        self.name = f"{tag}{q}({base.name},{slot})" + ("" if flavor == GENERAL else "*")
        self.arity = base.arity
        self.variance = base.variance
        self.kinds = base.kinds

    # G(P) and G(d) with the passive slots filled in
    def _g_obj(self, args, p):
        return self.base.obj(_with(args, self.slot, p))

    def _g_map(self, args, m: MorphismRec):
        return self.base.map(self.slot, m, _with(args, self.slot, None))

    def _res(self, m):
        return resolution_of_module(m, self.q + 1)

    def _g_complex(self, args, res: ResolutionRec) -> ComplexRec:
        """The three terms of ``G(P)`` around degree q, in arrow order."""
        q = self.q
        ring = res.module.ring
        zero = Presentation.free(ring, 0)

        def gd(i):
            # G(d_i) for i >= 1; G(d_0) is the map to or from the zero module
            if i == 0:
                g0 = self._g_obj(args, res.free(0))
                if self.base.variance[self.slot] == CO:
                    return MorphismRec.zero(g0, zero)
                return MorphismRec.zero(zero, g0)
            return self._g_map(args, MorphismRec(res.free(i), res.free(i - 1), res.d(i)))

        if self.base.variance[self.slot] == CO:
            return ComplexRec.from_maps(gd(q + 1), gd(q))
        return ComplexRec.from_maps(gd(q), gd(q + 1))

    def value(self, args):
        self._check_args(args)
        return _cached_value(self, tuple(args))

    def _value(self, args):
        c = self._g_complex(args, self._res(args[self.slot]))
        if self.flavor == GENERAL:
            return _catalogue().DEFECT.value((c,))
        if self.flavor == RIGHT_EXACT_COVARIANT:
            # Kernel of the map Cokernel(G(d_{q+1})) -> G(P_{q-1}) induced by G(d_q)
            cok = _catalogue().COKERNEL.value((ComplexRec.from_maps(c.maps[0]),))
            induced = MorphismRec(cok.obj, c.objects[2], cok.iota @ c.maps[1].matrix)
            ker = _catalogue().KERNEL.value((ComplexRec.from_maps(induced),))
            return FunctorValue(ker.obj, cok.hull, ker.iota @ cok.iota)
        # Cokernel of G(P_{q-1}) -> Kernel(G(P_q) -> G(P_{q+1}))
        ker = _catalogue().KERNEL.value((ComplexRec.from_maps(c.maps[1]),))
        lift = right_divide(c.maps[0].matrix, ker.iota, c.objects[1].relations)
        if lift is None:
            raise InternalInconsistency("image does not lie in the kernel")
        to_ker = MorphismRec(c.objects[0], ker.obj, lift)
        cok = _catalogue().COKERNEL.value((ComplexRec.from_maps(to_ker),))
        hull = Presentation(ker.hull.ring, ker.hull.gens,
                            c.maps[0].matrix.stack(ker.hull.relations))
        return FunctorValue(cok.obj, hull, cok.iota @ ker.iota)

    def _general(self):
        if self.flavor == GENERAL:
            return self
        return DerivedFunctor(self.base, self.slot, self.q)

    def map(self, slot, phi, args):
        return _cached_map(self, slot, phi, tuple(args))

    def _map(self, slot, phi, args):
        if self.flavor != GENERAL:
            return self._transport(slot, phi, args)
        src, tgt = _with(args, slot, phi.source), _with(args, slot, phi.target)
        co = self.variance[slot] == CO
        if slot == self.slot:
            lift = resolution_of_seq(phi, self.q, self.q + 1)
            rs, rt = lift.source, lift.target
            pq = MorphismRec(rs.free(self.q), rt.free(self.q), lift.levels[self.q])
            mid = self._g_map(args, pq)
            cs, ct = self._g_complex(args, rs), self._g_complex(args, rt)
        else:
            res_args = _with(args, self.slot, None)
            rs = rt = self._res(args[self.slot])
            pfree = rs.free(self.q)
            mid = self.base.map(slot, phi, _with(res_args, self.slot, pfree))
            cs, ct = self._g_complex(src, rs), self._g_complex(tgt, rt)
        if not co:
            cs, ct = ct, cs
        chain = ComplexMorphism.single(cs, ct, 2, mid)
        return _catalogue().DEFECT.map(0, chain, ())

    def _transport(self, slot, phi, args):
        general = self._general()
        src, tgt = _with(args, slot, phi.source), _with(args, slot, phi.target)
        if self.variance[slot] == CONTRA:
            src, tgt = tgt, src
        cs, ct = self.value(src), self.value(tgt)
        gs, gt = general.value(src), general.value(tgt)
        mid = general.map(slot, phi, args)
        to_general = right_divide(cs.iota, gs.iota, gs.hull.relations)
        from_general = right_divide(gt.iota, ct.iota, ct.hull.relations)
        if to_general is None or from_general is None:
            raise InternalInconsistency("derived flavors disagree")
        return MorphismRec(cs.obj, ct.obj, to_general @ mid.matrix @ from_general)


def left_derived(g: Functor, slot: int, q: int) -> Functor:
    if g.variance[slot] != CO:
        raise ValueError("left derivation needs a covariant slot")
    return DerivedFunctor(g, slot, q)


def right_derived_cofunctor(g: Functor, slot: int, q: int) -> Functor:
    if g.variance[slot] != CONTRA:
        raise ValueError("right derivation of a cofunctor needs a contravariant slot")
    return DerivedFunctor(g, slot, q)


def left_derived_right_exact(g: Functor, slot: int, q: int) -> Functor:
    return DerivedFunctor(g, slot, q, RIGHT_EXACT_COVARIANT)


def right_derived_left_exact(g: Functor, slot: int, q: int) -> Functor:
    return DerivedFunctor(g, slot, q, LEFT_EXACT_CONTRAVARIANT)


# -- public entry points -----------------------------------------------------------

def functor_obj(f: Functor, args) -> Presentation:
    if not isinstance(args, (tuple, list)):
        args = (args,)
    return f.obj(tuple(args))


def functor_value(f: Functor, args) -> FunctorValue:
    if not isinstance(args, (tuple, list)):
        args = (args,)
    return f.value(tuple(args))


def functor_map(f: Functor, phi, fixed=(), slot: int = 0) -> MorphismRec:
    """``F(phi)`` with ``fixed`` filling the passive slots in order."""
    fixed = tuple(fixed)
    if len(fixed) != f.arity - 1:
        raise ShapeError(f"{f.name} needs {f.arity - 1} fixed arguments")
    return f.map(slot, phi, fixed[:slot] + (None,) + fixed[slot:])


def functor_on_complex(f: Functor, c: ComplexRec, fixed=(), slot: int = 0) -> ComplexRec:
    fixed = tuple(fixed)
    full = lambda x: fixed[:slot] + (x,) + fixed[slot:]  # noqa: E731
    maps = [functor_map(f, m, fixed, slot) for m in c.maps]
    if f.variance[slot] == CONTRA:
        maps.reverse()
    if not maps:
        return ComplexRec(tuple(functor_obj(f, full(o)) for o in c.objects), ())
    return ComplexRec.from_maps(*maps)


def clear_functor_caches():
    _cached_value.cache_clear()
    _cached_map.cache_clear()
    resolution_of_module.cache_clear()


def _catalogue():
    # Cokernel, Kernel and DefectOfHoms live in the catalogue, which imports us
    from . import catalogue
    return catalogue
