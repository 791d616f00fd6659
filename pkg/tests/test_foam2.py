import pytest
import sympy
from hypothesis import given, strategies as st

from foamcat.algebra import LaurentPoly
from foamcat.foam2 import (Blister, DotAlgebra, FoamEvalError, FoamParams2, SeamTube, Sphere,
                           StateSpace2, Theta, TwoSphere, bubble_calculus, closed_eval2,
                           edge_map2, foam_degree2, phi2_scalar, state_space2, trace_circles)

SYM = FoamParams2.symbolic()
elems = st.tuples(st.integers(-3, 3), st.integers(-3, 3))
params = st.builds(FoamParams2, st.integers(-2, 2), st.integers(-2, 2))


def test_sphere_values():
    assert closed_eval2(Sphere(0)) == 0
    assert closed_eval2(Sphere(1)) == 1
    assert closed_eval2(Sphere(2), SYM) == sympy.Symbol("beta2")


def test_two_sphere():
    assert closed_eval2(TwoSphere()) == -1


@pytest.mark.parametrize("a,b,v", [(1, 0, 1), (0, 1, -1), (0, 0, 0), (1, 1, 0)])
def test_theta_table(a, b, v):
    assert closed_eval2(Theta(a, b)) == v


@given(st.integers(0, 5), st.integers(0, 5))
def test_theta_is_antisymmetric(a, b):
    assert closed_eval2(Theta(a, b), SYM) == sympy.expand(-closed_eval2(Theta(b, a), SYM))


def test_blister_sides_differ_by_sign():
    assert closed_eval2(Blister("left", 1)) == 1
    assert closed_eval2(Blister("right", 1)) == -1


def test_seam_tube_value():
    assert closed_eval2(SeamTube()) == 0
    assert closed_eval2(SeamTube(), SYM) == 0
    with pytest.raises(FoamEvalError):
        closed_eval2(SeamTube("twisted"))


def test_negative_dots_rejected():
    with pytest.raises(FoamEvalError):
        closed_eval2(Sphere(-1))


class TestDotAlgebra:
    @given(elems, elems, elems, params)
    def test_associative_commutative(self, a, b, c, p):
        A = DotAlgebra(p)
        assert A.mul(a, b) == A.mul(b, a)
        assert A.mul(A.mul(a, b), c) == A.mul(a, A.mul(b, c))

    @given(params)
    def test_pairing_is_unimodular(self, p):
        A = DotAlgebra(p)
        G = sympy.Matrix(A.pairing())
        assert G.det() == -1
        for i, bi in enumerate((A.one, A.X)):
            for j, bs in enumerate(A.dual_basis()):
                assert A.counit(A.mul(bi, bs)) == int(i == j)

    def test_neck_cutting_symbolic(self):
        A = DotAlgebra(SYM)
        # sum_i b_i (x) b_i*, multiplied back, is the handle element 2X - beta2
        tot = (0, 0)
        for bi, bs in zip((A.one, A.X), A.dual_basis()):
            tot = A.add(tot, A.mul(bi, bs))
        assert tot == (-sympy.Symbol("beta2"), 2)

    @given(elems, params)
    def test_frobenius_counit(self, a, p):
        A = DotAlgebra(p)
        d = A.comult(a)
        # (counit (x) id) Delta = id
        left = [0, 0]
        for (i, j), c in d.items():
            left[j] += c * A.counit([A.one, A.X][i])
        assert tuple(left) == a


def test_degrees():
    assert foam_degree2(2, 0, 0) == 2       # a sphere
    assert foam_degree2(1, 0, 2) == 0       # a disk with two corners
    with pytest.raises(ValueError):
        foam_degree2(1, 0, 3)


def test_phi2_signs_by_parity():
    assert phi2_scalar("cap_EF", 0, 1) == (1, False)
    assert phi2_scalar("cap_EF", 1, 1) == (-1, False)
    assert phi2_scalar("cup_FE", 0, 1) == (-1, False)
    assert phi2_scalar("dot", 3, 0)[1]


class TestBubbles:
    @pytest.mark.parametrize("lam", range(-3, 4))
    def test_degree_rules(self, lam):
        for o in ("cw", "ccw"):
            for d in range(5):
                k = d - lam + 1 if o == "cw" else d + lam + 1
                v = bubble_calculus(lam, d, o)
                if k < 0:
                    assert v == 0
                if k == 0:
                    assert v == 1

    @pytest.mark.parametrize("lam", range(-2, 3))
    def test_infinite_grassmannian(self, lam):
        # generating series of cw and ccw bubbles are inverse to each other
        for total in range(1, 6):
            s = 0
            for a in range(total + 1):
                cw = bubble_calculus(lam, a + lam - 1, "cw", SYM, fake=True)
                ccw = bubble_calculus(lam, total - a - lam - 1, "ccw", SYM, fake=True)
                s += cw * ccw
            assert sympy.expand(s) == 0


class TestStateSpaces:
    def test_one_circle(self):
        S = state_space2((0, 2), [[("F", 0)], [("E", 0)]])
        assert S.graded_dimension() == LaurentPoly({1: 1, -1: 1})

    def test_two_disjoint_circles(self):
        blocks = [[("F", 1)], [("E", 1)], [("F", 1)], [("E", 1)]]
        assert len(trace_circles((0, 0, 2, 2), blocks)) == 2
        assert state_space2((0, 0, 2, 2), blocks).rank == 4

    def test_nested_cups_make_one_circle(self):
        blocks = [[("F", 1)], [("F", 0)], [("E", 0)], [("E", 1)]]
        assert len(trace_circles((0, 0, 2), blocks)) == 1

    @pytest.mark.parametrize("p", [FoamParams2(), FoamParams2(1, -1), SYM])
    def test_split_then_merge_is_the_handle(self, p):
        a, b, c = (StateSpace2([frozenset([x])]) for x in "abc")
        mid = StateSpace2([frozenset(["m1"]), frozenset(["m2"])])
        split = edge_map2("split", a, mid, params=p)
        merge = edge_map2("merge", mid, b, params=p)
        h = merge.compose(split)
        A = DotAlgebra(p)
        for col, lab in enumerate(a.labels):
            el = A.mul((1 - lab[0], lab[0]), (-p.beta2, 2))
            for row, lab2 in enumerate(b.labels):
                got = h.entries.get((b.module.ids()[row], a.module.ids()[col]), 0)
                assert sympy.expand(got - el[lab2[0]]) == 0
        with pytest.raises(FoamEvalError):
            edge_map2("merge", a, mid)
        with pytest.raises(FoamEvalError):
            edge_map2("saddle", a, c)

    def test_dot_map(self):
        S = StateSpace2([frozenset(["a"])])
        f = edge_map2("dot", S, S, where="a")
        one, x = S.module.ids()
        assert f.entries == {(x, one): 1}
        assert f.degree == -2


def test_edge_map_is_degree_zero_on_hopf_cube():
    from foamcat.homology import assemble
    from foamcat.skewhowe import example
    wc = assemble(example("hopf+"), 2)
    assert wc.edges and all(f.degree == 0 for f in wc.edges.values())
