import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _gen import integer_smith_factors
from fpmod.simplicial import (CIRCLE, KLEIN_BOTTLE, PROJECTIVE_PLANE, TORUS, boundary_matrix,
                              closure, euler_characteristic, simplicial_chain_complex,
                              simplicial_homology)


def hom(facets, i, co=False):
    d = simplicial_homology(facets, i, co)
    return tuple(int(f) for f in d.factors), d.rank


def oracle(facets, i):
    """``H_i`` from sympy Smith forms of the neighbouring boundary matrices."""
    faces = closure(facets)
    if i >= len(faces):
        return (), 0
    down = (integer_smith_factors([list(r) for r in boundary_matrix(faces, i).rows],
                                  len(faces[i - 1])) if i else ())
    up = (integer_smith_factors([list(r) for r in boundary_matrix(faces, i + 1).rows],
                                len(faces[i])) if i + 1 < len(faces) else ())
    return tuple(x for x in up if x != 1), len(faces[i]) - len(down) - len(up)


def test_hollow_triangle_boundary():
    faces = closure(CIRCLE)
    d1 = boundary_matrix(faces, 1)
    assert d1.shape == (3, 3)
    assert all(sorted(r) == [-1, 0, 1] for r in d1.rows)


def test_single_vertex():
    c = simplicial_chain_complex([[0]])
    assert len(c.objects) == 1 and not c.maps
    assert hom([[0]], 0) == ((), 1)


def test_solid_triangle():
    faces = closure([[0, 1, 2]])
    assert (boundary_matrix(faces, 2) @ boundary_matrix(faces, 1)).is_zero()
    assert hom([[0, 1, 2]], 1) == ((), 0) and hom([[0, 1, 2]], 0) == ((), 1)


@pytest.mark.parametrize("facets,expected,chi", [
    (CIRCLE, [((), 1), ((), 1)], 0),
    (TORUS, [((), 1), ((), 2), ((), 1)], 0),
    (PROJECTIVE_PLANE, [((), 1), ((2,), 0), ((), 0)], 1),
    (KLEIN_BOTTLE, [((), 1), ((2,), 1), ((), 0)], 0),
], ids=["circle", "torus", "rp2", "klein"])
def test_surfaces(facets, expected, chi):
    for i, want in enumerate(expected):
        assert hom(facets, i) == want == oracle(facets, i)
    assert euler_characteristic(facets) == chi


@pytest.mark.parametrize("facets,expected", [
    (TORUS, [((), 1), ((), 2), ((), 1)]),
    (PROJECTIVE_PLANE, [((), 1), ((), 0), ((2,), 0)]),
    (KLEIN_BOTTLE, [((), 1), ((), 1), ((2,), 0)]),
], ids=["torus", "rp2", "klein"])
def test_cohomology(facets, expected):
    # universal coefficients: torsion moves up one degree
    for i, want in enumerate(expected):
        assert hom(facets, i, co=True) == want


def test_degree_out_of_range():
    assert hom(CIRCLE, 5) == ((), 0)
    with pytest.raises(ValueError):
        simplicial_homology(CIRCLE, -1)


def test_malformed_facets():
    with pytest.raises(ValueError):
        closure([[0, "a"]])
    with pytest.raises(ValueError):
        closure([[]])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_random_complexes_against_sympy(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 7)
    facets = [rng.sample(range(n), rng.randint(2, min(4, n))) for _ in range(rng.randint(1, 6))]
    top = max(len(f) for f in facets) - 1
    for i in range(top + 1):
        assert hom(facets, i) == oracle(facets, i)


@pytest.mark.parametrize("facets", [CIRCLE, TORUS, PROJECTIVE_PLANE, KLEIN_BOTTLE,
                                    [[0, 1, 2, 3]], [[0, 1], [2, 3, 4]]])
def test_euler_characteristic_from_homology(facets):
    top = max(len(f) for f in facets) - 1
    assert euler_characteristic(facets) == sum((-1) ** i * hom(facets, i)[1]
                                               for i in range(top + 1))
    # universal coefficients in degree zero
    assert hom(facets, 0, co=True)[1] == hom(facets, 0)[1]


def test_facets_json_file(tmp_path):
    p = tmp_path / "f.json"
    p.write_text(json.dumps({"facets": KLEIN_BOTTLE}))
    assert hom(json.loads(p.read_text())["facets"], 1) == ((2,), 1)
