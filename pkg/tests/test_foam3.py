import itertools

import pytest
import sympy

from foamcat.algebra import qint
from foamcat.foam3 import (DotAlgebra3, FoamParams3, catalogue_degree, change_of_basis,
                           dot_migration, foam_degree3, forget_sign, phi3_sign, reduce_web,
                           sphere_eval3, state_space3, theta_eval3, transported_map,
                           tree_independent, web_faces)

from webgen import random_foam3_webs as random_webs

SYM = FoamParams3.symbolic()
t3, t4, t5 = sympy.symbols("theta3 theta4 theta5")
CYCLIC = {(0, 1, 2), (1, 2, 0), (2, 0, 1)}
ANTI = {(0, 2, 1), (2, 1, 0), (1, 0, 2)}


def theta_expected(a, b, c):
    if (a, b, c) in CYCLIC:
        return 1
    if (a, b, c) in ANTI:
        return -1
    return 0


class TestClosedFoams:
    @pytest.mark.parametrize("d,v", [(0, 0), (1, 0), (2, -1)])
    def test_sphere_values(self, d, v):
        assert sphere_eval3(d) == v

    def test_higher_spheres_are_thetas(self):
        assert sphere_eval3(3, SYM) == t3
        assert sphere_eval3(4, SYM) == t4
        assert sphere_eval3(5, SYM) == t5
        assert sphere_eval3(6) == 0

    @pytest.mark.parametrize("abc", list(itertools.product(range(3), repeat=3)))
    def test_theta_table(self, abc):
        assert theta_eval3(*abc) == theta_expected(*abc)

    def test_theta_with_more_dots_uses_parameters(self):
        # (0, 1, 3) is the Schur function s_1 = e1 = -theta3; reversing is an odd permutation
        assert theta_eval3(0, 1, 3, SYM) == -t3
        assert theta_eval3(3, 1, 0, SYM) == t3
        assert theta_eval3(0, 0, 3) == 0

    def test_dot_migration_holds(self):
        assert dot_migration() == []
        assert dot_migration(SYM, max_dots=2) == []
        assert dot_migration(FoamParams3(1, -1, 2), max_dots=2) == []


class TestDotAlgebra3:
    def test_cubic_relation(self):
        A = DotAlgebra3(SYM)
        e1, e2, e3 = A.e
        assert A.power(3) == (e3, sympy.expand(-e2), e1)

    def test_pairing_unimodular(self):
        A = DotAlgebra3()
        basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        G = sympy.Matrix(3, 3, lambda i, j: A.counit(A.mul(basis[i], basis[j])))
        assert abs(G.det()) == 1


class TestDegreesAndSigns:
    def test_catalogue(self):
        assert catalogue_degree("sphere") == 4
        assert catalogue_degree("cup") == 2
        assert catalogue_degree("zip") == catalogue_degree("unzip") == -1
        assert catalogue_degree("dot") == -2
        with pytest.raises(ValueError):
            foam_degree3(1, 0, 3)

    def test_sign_table_lookup(self):
        assert phi3_sign("cup_cw", 3, 3) == phi3_sign("cup", 3, 3, "cw")
        with pytest.raises(KeyError):
            phi3_sign("cup", 7, 0, "cw")

    def test_forget_sign(self):
        assert forget_sign(2, 0) == 1
        assert forget_sign(1, 0) == -1


class TestStateSpaces:
    def test_circle(self):
        S = state_space3((("F", 0), ("E", 0)), (0, 3))
        assert S.graded_dimension() == qint(3)

    def test_double_rung_web(self):
        # two rungs up and two down: a circle with two digons removed
        w = (("F", 1), ("F", 1), ("E", 1), ("E", 1))
        S = state_space3(w, (0, 0, 3))
        assert web_faces((0, 0, 3), w) == 3
        assert S.graded_dimension() == qint(2) * qint(2) * qint(3)

    def test_zero_web_has_empty_state_space(self):
        assert state_space3((("F", 0), ("E", 0)), (0, 0, 3)).rank == 0

    def test_orders_give_same_dimension(self):
        for a0, w, _ in random_webs(11, 10):
            A, B = (state_space3(w, a0, order=o) for o in ("first", "last"))
            assert A.graded_dimension() == B.graded_dimension()
            P = change_of_basis(A, B)
            assert abs(sympy.Matrix(P.tolist()).det()) == 1 if P.size else True

    def test_faces(self):
        assert web_faces((0, 3), (("F", 0), ("E", 0))) == 1


class TestTreeIndependence:
    @pytest.mark.parametrize("web", random_webs(3, 20), ids=lambda w: "%s:%d" % (w[0], len(w[1])))
    def test_transported_maps_agree(self, web):
        a0, w, maps = web
        for kind, pos in maps:
            ok, detail = tree_independent(kind, w, a0, pos)
            assert ok, detail

    def test_some_webs_have_distinct_trees(self):
        distinct = 0
        for a0, w, _ in random_webs(5, 20):
            if reduce_web(w, a0, order="first").moves != reduce_web(w, a0, order="last").moves:
                distinct += 1
        assert distinct > 0

    def test_cap_dot_dot_cup_is_minus_one(self):
        # the two-dot sphere through transported maps
        w = (("F", 0), ("E", 0))
        S = state_space3(w, (0, 3))
        E = state_space3((), (0, 3))
        d1 = transported_map("dot", S, S, 0)
        cap = transported_map("cap", S, E, 0)
        cup = transported_map("cup", E, S, 0, color=0)
        f = cap.compose(d1).compose(d1).compose(cup)
        assert list(f.entries.values()) == [-1]
        assert cap.compose(cup).is_zero()
