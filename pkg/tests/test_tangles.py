import pytest

from foamcat.algebra import homology
from foamcat.homology import ResourceError, link_homology, projector_truncation
from foamcat.skewhowe import parse_braid
from foamcat.tangles import (Cobordisms, Obj, TangleComplex, braid_complex, circles,
                             identity_web, turnback, web_name)


class TestWebs:
    def test_identity_and_turnback_names(self):
        assert web_name(identity_web(2), 2) == "id"
        assert web_name(turnback(2, 0), 2) == "U1"
        assert web_name(turnback(3, 1), 3) == "U2"

    def test_circles_of_closures(self):
        # id against id gives one closed loop per strand
        assert len(circles(identity_web(3), identity_web(3))) == 3
        assert len(circles(turnback(2, 0), turnback(2, 0))) == 2
        assert len(circles(identity_web(2), turnback(2, 0))) == 1


class TestCobordisms:
    cob = Cobordisms()

    def test_identity_composes_to_itself(self):
        A = identity_web(2)
        one = self.cob.identity(A)
        assert self.cob.compose(A, A, A, one, one) == one

    def test_saddle_has_degree_minus_one(self):
        C = TangleComplex.crossing(2, 0, 1, self.cob)
        C.check()
        (_, f), = C.d[0].items()
        assert [self.cob.degree(identity_web(2), turnback(2, 0), lab) for lab in f] == [-1]

    def test_saddle_twice_is_the_handle(self):
        # id -> U -> id composes to 2X - beta2 on the through strands, dotted once at beta = 0
        I, U = identity_web(2), turnback(2, 0)
        s1 = {(0,) * len(circles(I, U)): 1}
        s2 = {(0,) * len(circles(U, I)): 1}
        h = self.cob.compose(I, U, I, s2, s1)
        assert sum(h.values()) == 2
        assert all(self.cob.degree(I, I, lab) == -2 for lab in h)


class TestBraidComplexes:
    @pytest.mark.parametrize("word", [[1], [1, 1], [-1, -1], [1, 1, 1], [1, -1]])
    def test_closure_matches_link_homology(self, word):
        C = braid_complex(2, word)
        C.check()
        t = parse_braid(" ".join("s%d" % g for g in word), strands=2)
        assert homology(C.closure()) == link_homology(t, 2, framed=True)

    def test_three_strand_closure(self):
        C = braid_complex(3, [1, -2, 1, -2])
        t = parse_braid("s1 s-2 s1 s-2", strands=3)
        assert homology(C.closure()) == link_homology(t, 2, framed=True)

    def test_inverse_pair_simplifies_to_identity(self):
        C = braid_complex(2, [1, -1])
        assert C.chain_groups() == {0: [("id", 0)]}

    def test_powers_of_the_twist(self):
        for k in range(1, 4):
            C = braid_complex(2, [1] * (2 * k))
            groups = C.chain_groups()
            assert groups[0] == [("id", 0)]
            assert [groups[h] for h in range(1, 2 * k + 1)] == [[("U1", 2 * h - 1)] for h in range(1, 2 * k + 1)]


class TestProjector:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_properties(self, k):
        P = projector_truncation(2, k)
        rep = P.report(projector_truncation(2, k + 1))
        assert rep["stabilizes"]
        assert rep["identity_only_in_degree_0"]
        assert rep["nonnegative_support"]
        assert rep["turnback_acyclic"]
        assert rep["turnback_acyclic_through"] >= 2 * k - 2

    def test_k_zero_is_the_identity(self):
        assert projector_truncation(2, 0).chain_groups == {0: [("id", 0)]}

    def test_three_strands(self):
        rep = projector_truncation(3, 1).report()
        assert rep["identity_only_in_degree_0"] and rep["turnback_acyclic"]

    def test_turnback_lands_past_the_range(self):
        for k in (1, 2):
            tb = projector_truncation(2, k).turnback()
            assert min(tb) == 2 * k
            assert tb[2 * k] == [("U1", 4 * k)]

    def test_guards(self):
        with pytest.raises(ResourceError):
            projector_truncation(2, 9)
        with pytest.raises(ResourceError):
            projector_truncation(2, 3, max_objects=3)
        with pytest.raises(ValueError):
            projector_truncation(4, 1)
        with pytest.raises(ValueError):
            projector_truncation(2, -1)


def test_obj_is_hashable():
    assert len({Obj("id", 0), Obj("id", 0), Obj("U1", 1)}) == 2
