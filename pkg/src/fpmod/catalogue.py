"""The basic functors and the standard composites built from them."""
from __future__ import annotations

from .errors import InvalidMorphism, UnsupportedBackend
from .functors import (CO, CONTRA, MODULE, BasicFunctor, ComplexRec, Functor, FunctorValue,
                       IdentityFunctor, compose_functors, left_derived,
                       left_derived_right_exact, right_derived_cofunctor,
                       right_derived_left_exact, self_hull)
from .presentation import MorphismRec, Presentation, better_generators
from .procedures import subfactor_module
from .ring import Matrix, decide_zero, kronecker, syzygies_generators, theta_transpose


def _embedded_subfactor(gens: Matrix, modulo: Matrix, hull: Presentation) -> FunctorValue:
    """``<gens> + <modulo> / <modulo>`` as a cleaned-up module embedded in ``hull``."""
    pres, n = subfactor_module(gens, modulo)
    obj, bc = better_generators(pres)
    return FunctorValue(obj, hull, bc.new_to_old @ n)


class Cokernel(BasicFunctor):
    """``alpha: A' -> A`` gives ``A / im(alpha)``; its own hull."""

    name = "Cokernel"
    kinds = (2,)

    def _value(self, args):
        (alpha,) = args[0].maps
        a = alpha.target
        return self_hull(Presentation(a.ring, a.gens, alpha.matrix.stack(a.relations)))

    def hull_map(self, slot, phi, src, tgt):
        return phi.at(1).matrix


class Kernel(BasicFunctor):
    """``alpha: A -> A''`` gives ``ker(alpha)`` embedded in ``A``."""

    name = "Kernel"
    kinds = (2,)

    def _value(self, args):
        (alpha,) = args[0].maps
        a = alpha.source
        iota = syzygies_generators(alpha.matrix, alpha.target.relations)
        return _embedded_subfactor(iota, a.relations, a)

    def hull_map(self, slot, phi, src, tgt):
        return phi.at(2).matrix


class DefectOfHoms(BasicFunctor):
    """``A' -a1-> A -a2-> A''`` gives ``ker(a2) / im(a1)`` embedded in ``coker(a1)``."""

    name = "DefectOfHoms"
    kinds = (3,)

    def _value(self, args):
        a1, a2 = args[0].maps
        a = a1.target
        if not decide_zero(a1.matrix @ a2.matrix, a2.target.relations).reduced.is_zero():
            raise InvalidMorphism("defect needs composable maps with zero composite")
        iota = syzygies_generators(a2.matrix, a2.target.relations)
        image = a1.matrix.stack(a.relations)
        return _embedded_subfactor(iota, image, Presentation(a.ring, a.gens, image))

    def hull_map(self, slot, phi, src, tgt):
        return phi.at(2).matrix


class HomR(BasicFunctor):
    """``M -> Hom_R(M, R)`` as the kernel of ``M^theta`` on a free module."""

    name = "HomR"
    variance = (CONTRA,)

    def _value(self, args):
        m = args[0]
        free = Presentation.free(m.ring, m.gens)
        iota = syzygies_generators(theta_transpose(m.relations))
        return _embedded_subfactor(iota, free.relations, free)

    def hull_map(self, slot, phi, src, tgt):
        return theta_transpose(phi.matrix)


def _require_commutative(ring, name):
    if not ring.commutative:
        raise UnsupportedBackend(f"{name} needs a commutative ring")


class Tensor(BasicFunctor):
    """``M (x) L`` presented by ``stack(M (x) I, I (x) L)``."""

    name = "Tensor"
    arity = 2
    variance = (CO, CO)
    kinds = (MODULE, MODULE)

    def _value(self, args):
        m, l = args
        ring = m.ring
        _require_commutative(ring, self.name)
        t = kronecker(m.relations, Matrix.identity(ring, l.gens)).stack(
            kronecker(Matrix.identity(ring, m.gens), l.relations))
        return self_hull(Presentation(ring, m.gens * l.gens, t))

    def hull_map(self, slot, phi, src, tgt):
        ring = phi.matrix.ring
        if slot == 0:
            return kronecker(phi.matrix, Matrix.identity(ring, src[1].gens))
        return kronecker(Matrix.identity(ring, src[0].gens), phi.matrix)


class Hom(BasicFunctor):
    """``Hom(M, L)``: maps are ``l0 x l0'`` matrices flattened row-major."""

    name = "Hom"
    arity = 2
    variance = (CONTRA, CO)
    kinds = (MODULE, MODULE)

    def _value(self, args):
        m, l = args
        ring = m.ring
        _require_commutative(ring, self.name)
        k = l.gens
        hull = Presentation(ring, m.gens * k, kronecker(Matrix.identity(ring, m.gens),
                                                          l.relations))
        target_rel = kronecker(Matrix.identity(ring, m.relations.nrows), l.relations)
        kappa = theta_transpose(kronecker(m.relations, Matrix.identity(ring, k)))
        iota = syzygies_generators(kappa, target_rel)
        return _embedded_subfactor(iota, hull.relations, hull)

    def hull_map(self, slot, phi, src, tgt):
        ring = phi.matrix.ring
        if slot == 0:
            return theta_transpose(kronecker(phi.matrix, Matrix.identity(ring, src[1].gens)))
        return kronecker(Matrix.identity(ring, src[0].gens), phi.matrix)


IDENTITY = IdentityFunctor()
COKERNEL = Cokernel()
KERNEL = Kernel()
DEFECT = DefectOfHoms()
HOM_R = HomR()
TENSOR = Tensor()
HOM = Hom()

BASIC = {f.name: f for f in (COKERNEL, KERNEL, DEFECT, HOM_R, TENSOR, HOM)}


def cokernel_functor() -> Functor:
    return COKERNEL


def kernel_functor() -> Functor:
    return KERNEL


def defect_functor() -> Functor:
    return DEFECT


def hom_r_functor() -> Functor:
    return HOM_R


def tensor_functor() -> Functor:
    return TENSOR


def hom_functor() -> Functor:
    return HOM


_EXT, _EXT_CHEAP, _TOR, _TOR_CHEAP = {}, {}, {}, {}


def ext(q: int, cheap: bool = False) -> Functor:
    """``Ext^q(-, -)`` derived in the first slot."""
    table = _EXT_CHEAP if cheap else _EXT
    if q not in table:
        table[q] = (right_derived_left_exact(HOM, 0, q) if cheap
                    else right_derived_cofunctor(HOM, 0, q))
        table[q].name = f"Ext{q}" + ("*" if cheap else "")
    return table[q]


def tor(q: int, cheap: bool = False) -> Functor:
    """``Tor_q(-, -)`` derived in the first slot."""
    table = _TOR_CHEAP if cheap else _TOR
    if q not in table:
        table[q] = (left_derived_right_exact(TENSOR, 0, q) if cheap
                    else left_derived(TENSOR, 0, q))
        table[q].name = f"Tor{q}" + ("*" if cheap else "")
    return table[q]


def instantiate_standard(q: int, j: int | None = None, k: int | None = None) -> dict:
    """Ext, Tor and the standard composites for degree ``q``."""
    hom_hom = compose_functors(HOM, 0, HOM)
    j = q if j is None else j
    k = q if k is None else k
    return {
        "Ext": ext(q),
        "Ext_left_exact": ext(q, cheap=True),
        "Tor": tor(q),
        "Tor_right_exact": tor(q, cheap=True),
        "HomHom": hom_hom,
        "LHomHom": left_derived(hom_hom, 0, q),
        "ExtExt": compose_functors(ext(j), 0, ext(k)),
    }


def morphism_complex(alpha: MorphismRec) -> ComplexRec:
    """A morphism seen as a two-term complex (argument of Cokernel/Kernel)."""
    return ComplexRec.from_maps(alpha)
