import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _gen import ZZ, rand_group, rand_matrix, rand_morphism
from fpmod import (Matrix, MorphismRec, PolynomialRing, Presentation, Rationals, ShapeError,
                   canonical_decomposition, complete_im_sq, decide_zero, leftinverse,
                   morphisms_equal, preimage, resolution_of_module, right_divide,
                   subfactor_module)
from fpmod.presentation import is_zero_module, is_zero_morphism


def Z(rows, ncols=None):
    return Matrix(ZZ, rows, ncols)


class TestRightDivide:
    def test_exact(self):
        assert right_divide(Z([[4]]), Z([[2]])) == Z([[2]])

    def test_unsolvable(self):
        assert right_divide(Z([[3]]), Z([[2]])) is None

    def test_modulo(self):
        x = right_divide(Z([[3]]), Z([[2]]), Z([[5]]))
        assert (3 - 2 * x.rows[0][0]) % 5 == 0

    def test_shape(self):
        with pytest.raises(ShapeError):
            right_divide(Z([[1, 2]]), Z([[1]]))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10**6))
    def test_certificate(self, seed):
        rng = random.Random(seed)
        c = rng.randint(1, 3)
        a, l = rand_matrix(rng, ZZ, rng.randint(1, 3), c), rand_matrix(rng, ZZ, rng.randint(0, 2), c)
        x0, y0 = rand_matrix(rng, ZZ, 2, a.nrows), rand_matrix(rng, ZZ, 2, l.nrows)
        b = x0 @ a + y0 @ l
        x, y = right_divide(b, a, l, with_y=True)
        assert b == x @ a + y @ l


class TestLifts:
    z4 = Presentation.cyclic(ZZ, 4)
    z = Presentation.free(ZZ, 1)

    def test_complete_by_identity(self):
        rng = random.Random(0)
        a, b = rand_group(rng), rand_group(rng)
        alpha, phi = a.pres.identity(), rand_morphism(rng, a, b)
        psi = complete_im_sq(alpha, phi, b.pres.identity())
        assert morphisms_equal(psi, alpha.then(phi))

    def test_lift_through_free_cover(self):
        gamma = MorphismRec(self.z, self.z4, Z([[2]]))
        beta = MorphismRec(self.z, self.z4, Z([[1]]))
        psi = complete_im_sq(self.z.identity(), gamma, beta)
        assert (psi.matrix.rows[0][0] - 2) % 4 == 0

    def test_zero_lift(self):
        beta = MorphismRec(self.z, self.z4, Z([[1]]))
        psi = complete_im_sq(self.z.identity(), MorphismRec(self.z, self.z4, Z([[0]])), beta)
        assert is_zero_morphism(psi.then(beta))

    def test_leftinverse(self):
        assert leftinverse(self.z.identity()).matrix == Z([[1]])
        z2 = Presentation.free(ZZ, 2)
        proj = MorphismRec(z2, self.z, Z([[1], [0]]))
        psi = leftinverse(proj)
        assert psi.matrix == Z([[1, 0]])
        assert morphisms_equal(psi.then(proj), self.z.identity())
        assert leftinverse(MorphismRec(self.z, self.z, Z([[2]]))) is None

    def test_preimage(self):
        z6 = Presentation.cyclic(ZZ, 6)
        assert preimage(Z([[5]]), z6.identity()) == Z([[5]])
        assert preimage(Z([[6]]), MorphismRec(self.z, self.z, Z([[3]]))) == Z([[2]])
        x = preimage(Z([[3]]), MorphismRec(self.z, self.z4, Z([[1]])))
        assert (x.rows[0][0] - 3) % 4 == 0


class TestResolutions:
    def test_cyclic(self):
        res = resolution_of_module(Presentation.cyclic(ZZ, 6), 2)
        assert res.maps[0] == Z([[6]])
        assert res.maps[1].nrows == 0 and res.rank(2) == 0

    def test_free(self):
        res = resolution_of_module(Presentation.free(ZZ, 2), 2)
        assert res.maps[0].shape == (0, 2) and res.rank(1) == 0

    def test_koszul(self):
        R = PolynomialRing(Rationals(), ["x", "y"])
        x, y = R.gen("x"), R.gen("y")
        res = resolution_of_module(Presentation(R, 1, Matrix(R, [[x], [y]])), 3)
        assert res.maps[1] == Matrix(R, [[y, R.neg(x)]])
        assert res.maps[2].nrows == 0

    def test_redundant_relations_pruned(self):
        # the second relation is a multiple of the first, so no units survive
        res = resolution_of_module(Presentation(ZZ, 1, Z([[2], [4], [6]])), 2)
        assert res.maps[0].nrows == 1 and res.maps[1].nrows == 0

    def test_base_change_is_isomorphism(self):
        p = Presentation(ZZ, 2, Z([[1, 3], [0, 4]]))
        res = resolution_of_module(p, 1)
        bc = res.base_change
        fwd = MorphismRec(p, res.module, bc.old_to_new)
        back = MorphismRec(res.module, p, bc.new_to_old)
        assert morphisms_equal(fwd.then(back), p.identity())


class TestSubfactor:
    def test_two_z_mod_four(self):
        p, n = subfactor_module(Z([[2]]), Z([[4]]))
        d = canonical_decomposition(p)
        assert d.factors == (2,) and d.rank == 0
        assert n.ncols == 1

    def test_contained(self):
        p, _ = subfactor_module(Z([[4], [8]]), Z([[2]]))
        assert is_zero_module(p)

    def test_no_modulo(self):
        p, n = subfactor_module(Z([[2, 0], [4, 0]]), Matrix.zero(ZZ, 0, 2))
        assert canonical_decomposition(p).rank == 1
        assert decide_zero(n, Z([[2, 0]])).is_zero()
