"""Homological algebra over computable rings.

Finitely presented modules are relation matrices over a ring that can
decide row membership and compute syzygies; functors (Hom, tensor, Ext, Tor,
composites) are values that act on modules and on morphisms.
"""
from .backends import (Integers, PolynomialRing, PrimeField, Rationals, ResidueRing,
                       residue_class_ring, ring_from_json, smith_normal_form)
from .catalogue import (COKERNEL, DEFECT, HOM, HOM_R, IDENTITY, KERNEL, TENSOR,
                        cokernel_functor, defect_functor, ext, hom_functor, hom_r_functor,
                        instantiate_standard, kernel_functor, morphism_complex,
                        tensor_functor, tor)
from .errors import (FpmodError, InternalInconsistency, InvalidMorphism, NotExact,
                     RingMismatch, ShapeError, UnsupportedBackend)
from .functors import (ComplexMorphism, ComplexRec, compose_functors, curry, functor_map,
                       functor_obj, functor_on_complex, left_derived, left_derived_right_exact,
                       mor_slice, obj_slice, resolution_of_seq, right_derived_cofunctor,
                       right_derived_left_exact)
from .homology import (ShortExactSeq, long_exact_homology_seq, pullback,
                       resolve_short_exact_seq, verify_exactness)
from .pipeline import parse_functor, run_pipeline
from .presentation import (BaseChange, MorphismRec, Presentation, better_generators,
                           canonical_decomposition, eliminate_units, is_zero_module,
                           is_zero_morphism, morphism_is_valid,
                           morphisms_equal, presentations_equal)
from .procedures import (complete_im_sq, leftinverse, preimage, resolution_of_module,
                         right_divide, subfactor_module)
from .ring import (Matrix, basis_of_module, decide_zero, kronecker, mat_mul, mat_stack,
                   syzygies_generators, theta_transpose)
from .simplicial import simplicial_chain_complex, simplicial_homology

__version__ = "0.1.0"
__all__ = [n for n in dir() if not n.startswith('_')]
