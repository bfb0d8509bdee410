"""Simplicial chain complexes over Z and their (co)homology."""
from __future__ import annotations

from itertools import combinations

from .backends import Integers
from .catalogue import DEFECT, HOM_R
from .functors import ComplexRec, functor_on_complex
from .presentation import Decomposition, MorphismRec, Presentation, canonical_decomposition
from .ring import Matrix

ZZ = Integers()


def closure(facets) -> list[list[tuple]]:
    """Faces by dimension, each list sorted; vertices sorted inside a face."""
    faces = set()
    for f in facets:
        if not isinstance(f, (list, tuple)) or not f:
            raise ValueError(f"malformed facet {f!r}")
        if any(not isinstance(v, int) or isinstance(v, bool) or v < 0 for v in f):
            raise ValueError(f"vertices must be nonnegative integers: {f!r}")
        verts = tuple(sorted(set(f)))
        for k in range(1, len(verts) + 1):
            faces.update(combinations(verts, k))
    top = max((len(f) for f in faces), default=0)
    return [sorted(f for f in faces if len(f) == d + 1) for d in range(top)]


def boundary_matrix(faces, dim) -> Matrix:
    """``d_dim: C_dim -> C_{dim-1}``; rows are ``dim``-faces."""
    rows, cols = faces[dim], faces[dim - 1]
    index = {f: i for i, f in enumerate(cols)}
    out = []
    for f in rows:
        r = [0] * len(cols)
        for pos in range(len(f)):
            r[index[f[:pos] + f[pos + 1:]]] = -1 if pos % 2 else 1
        out.append(tuple(r))
    return Matrix(ZZ, out, len(cols), coerce=False)


def simplicial_chain_complex(facets) -> ComplexRec:
    """``C_top -> ... -> C_0`` in arrow order."""
    faces = closure(facets)
    free = [Presentation.free(ZZ, len(fs)) for fs in faces]
    maps = [MorphismRec(free[d], free[d - 1], boundary_matrix(faces, d))
            for d in range(len(faces) - 1, 0, -1)]
    if not maps:
        return ComplexRec(tuple(free), ())
    return ComplexRec.from_maps(*maps)


def _padded_defect(objs, maps, k) -> Presentation:
    zero = Presentation.free(ZZ, 0)
    obj = objs[k]
    inc = maps[k - 1] if k > 0 else MorphismRec.zero(zero, obj)
    out = maps[k] if k < len(maps) else MorphismRec.zero(obj, zero)
    return DEFECT.obj((ComplexRec.from_maps(inc, out),))


def simplicial_homology(facets, i: int, cohomology: bool = False) -> Decomposition:
    """``H_i`` (or ``H^i``) of the complex generated by ``facets``."""
    if i < 0:
        raise ValueError("degree must be nonnegative")
    c = simplicial_chain_complex(facets)
    top = len(c.objects) - 1
    if i > top:
        return Decomposition((), 0, ZZ)
    if cohomology:
        cc = functor_on_complex(HOM_R, c)
        # cochains run C^0 -> C^1 -> ... so degree i sits at position i
        return canonical_decomposition(_padded_defect(cc.objects, cc.maps, i))
    return canonical_decomposition(_padded_defect(c.objects, c.maps, top - i))


def euler_characteristic(facets) -> int:
    return sum((-1) ** d * len(fs) for d, fs in enumerate(closure(facets)))


# standard triangulations used by the demo and the tests
CIRCLE = [[0, 1], [1, 2], [0, 2]]
TORUS = [sorted({i % 7, (i + 1) % 7, (i + 3) % 7}) for i in range(7)] + \
        [sorted({i % 7, (i + 2) % 7, (i + 3) % 7}) for i in range(7)]
PROJECTIVE_PLANE = [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
                    [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3]]


def _klein_bottle():
    # 3x3 grid; right edge glued to the left edge with a flip
    def v(i, j):
        if i == 3:
            i, j = 0, (-j) % 3
        return 3 * i + (j % 3)

    tris = []
    for i in range(3):
        for j in range(3):
            a, b, c, d = v(i, j), v(i + 1, j), v(i + 1, j + 1), v(i, j + 1)
            tris.append(sorted((a, b, c)))
            tris.append(sorted((a, d, c)))
    return tris


KLEIN_BOTTLE = _klein_bottle()
