import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import invariant_factors

from foamcat.algebra import (GradedComplex, GradedMap, GradedModule, HomologyTable,
                             LaurentPoly, StructuralError, brute_force_invariant_factors,
                             gaussian_eliminate, homology, invariant_factors_sparse, qint,
                             qfactorial_binom, simplify_complex, smith_normal_form)

polys = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentPoly)
small = st.integers(-4, 4)


def matrices(max_side=4):
    return st.integers(1, max_side).flatmap(
        lambda r: st.integers(1, max_side).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


class TestLaurentPoly:
    @given(polys, polys, polys)
    def test_ring_laws(self, a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(polys)
    def test_bar_is_an_involution(self, a):
        assert a.bar().bar() == a

    @given(polys, st.integers(-5, 5))
    def test_shift_is_monomial_product(self, a, k):
        assert a.shift(k) == a * LaurentPoly({k: 1})

    def test_quantum_integers(self):
        assert qint(2) == LaurentPoly({1: 1, -1: 1})
        assert qint(3) == LaurentPoly({2: 1, 0: 1, -2: 1})
        assert qint(0) == 0

    @pytest.mark.parametrize("n", range(1, 6))
    def test_binomials_are_bar_invariant(self, n):
        for k in range(n + 1):
            b = qfactorial_binom(n, k)
            assert b == b.bar()
            assert sum(c for _, c in b.items()) == sympy.binomial(n, k)

    def test_parse_round_trip(self):
        p = LaurentPoly({3: 2, 0: -1, -2: 1})
        assert LaurentPoly.parse(str(p)) == p


class TestSmithNormalForm:
    @settings(max_examples=60, deadline=None)
    @given(matrices())
    def test_matches_determinantal_divisors(self, M):
        assert smith_normal_form(M) == brute_force_invariant_factors(M)

    @settings(max_examples=60, deadline=None)
    @given(matrices(5))
    def test_matches_sympy(self, M):
        A = sympy.Matrix(M)
        ref = [] if A.is_zero_matrix else [abs(int(x)) for x in invariant_factors(A, domain=sympy.ZZ) if x]
        assert smith_normal_form(M) == ref

    @settings(max_examples=40, deadline=None)
    @given(matrices())
    def test_transforms_are_unimodular(self, M):
        f, U, D, V = smith_normal_form(M, transforms=True)
        U, D, V, A = map(sympy.Matrix, (U, D, V, M))
        assert U * A * V == D
        assert abs(U.det()) == 1 and abs(V.det()) == 1
        assert [D[i, i] for i in range(len(f))] == f
        assert all(b % a == 0 for a, b in zip(f, f[1:]))

    @settings(max_examples=40, deadline=None)
    @given(matrices(5))
    def test_sparse_agrees_with_dense(self, M):
        rows = {r: {c: v for c, v in enumerate(row) if v} for r, row in enumerate(M)}
        assert invariant_factors_sparse(rows) == smith_normal_form(M)


def random_complex(rng, sizes=(3, 5, 3), degs=(0, 2)):
    """A random complex Z^a -> Z^b -> Z^c with d o d = 0, mixed by a unimodular change of basis."""
    a, b, c = sizes
    k = rng.randint(0, b)
    P = sympy.Matrix(k, a, lambda i, j: rng.randint(-2, 2))
    Q = sympy.Matrix(c, b - k, lambda i, j: rng.randint(-2, 2))
    d1 = P.col_join(sympy.zeros(b - k, a))
    d2 = sympy.zeros(c, k).row_join(Q)
    U = sympy.eye(b)
    for _ in range(6):
        i, j = rng.sample(range(b), 2) if b > 1 else (0, 0)
        if i != j:
            E = sympy.eye(b)
            E[i, j] = rng.choice([-1, 1])
            U = E * U
    d1, d2 = U * d1, d2 * U.inv()
    q = rng.choice(degs)
    C0, C1, C2 = (GradedModule([q] * s) for s in sizes)
    return GradedComplex({0: C0, 1: C1, 2: C2},
                         {0: GradedMap.from_dense(C0, C1, d1.tolist()),
                          1: GradedMap.from_dense(C1, C2, d2.tolist())}), (d1, d2)


def sympy_homology(d1, d2, sizes, q):
    def fac(A):
        return [] if A.is_zero_matrix else [abs(int(x)) for x in invariant_factors(A, domain=sympy.ZZ) if x]
    f1, f2 = fac(d1), fac(d2)
    a, b, c = sizes
    data = {(0, q): (a - len(f1), ()),
            (1, q): (b - len(f1) - len(f2), tuple(x for x in f1 if x > 1)),
            (2, q): (c - len(f2), tuple(x for x in f2 if x > 1))}
    return HomologyTable(data)


class TestComplexes:
    @pytest.mark.parametrize("seed", range(25))
    def test_homology_matches_sympy(self, seed):
        rng = random.Random(seed)
        sizes = (rng.randint(1, 4), rng.randint(1, 6), rng.randint(1, 4))
        C, (d1, d2) = random_complex(rng, sizes, degs=(0,))
        assert homology(C) == sympy_homology(d1, d2, sizes, 0)

    @pytest.mark.parametrize("seed", range(25))
    def test_simplification_preserves_homology(self, seed):
        rng = random.Random(100 + seed)
        sizes = (rng.randint(1, 4), rng.randint(1, 6), rng.randint(1, 4))
        C, _ = random_complex(rng, sizes)
        S = simplify_complex(C)
        assert homology(S) == homology(C)
        assert S.euler_characteristic() == C.euler_characteristic()
        assert all(v not in (1, -1) for f in S.differentials.values() for v in f.entries.values())

    def test_single_elimination(self):
        A, B = GradedModule([0]), GradedModule([0, 2])
        C = GradedComplex({0: A, 1: B}, {0: GradedMap.from_dense(A, B, [[1], [0]])})
        h, t, s = 0, B.ids()[0], A.ids()[0]
        R = gaussian_eliminate(C, h, t, s)
        assert R.size() == 1
        assert homology(R) == HomologyTable({(1, 2): (1, ())})

    def test_non_unit_elimination_is_rejected(self):
        A, B = GradedModule([0]), GradedModule([0])
        C = GradedComplex({0: A, 1: B}, {0: GradedMap.from_dense(A, B, [[2]])})
        with pytest.raises(ValueError):
            gaussian_eliminate(C, 0, B.ids()[0], A.ids()[0])
        assert homology(C) == HomologyTable({(1, 0): (0, (2,))})
        assert homology(C, "Q") == HomologyTable()

    def test_d_squared_violation_is_structural(self):
        A, B, D = GradedModule([0]), GradedModule([0]), GradedModule([0])
        with pytest.raises(StructuralError):
            GradedComplex({0: A, 1: B, 2: D}, {0: GradedMap.from_dense(A, B, [[1]]),
                                               1: GradedMap.from_dense(B, D, [[1]])})

    def test_inhomogeneous_entry_is_rejected(self):
        A, B = GradedModule([0]), GradedModule([2])
        with pytest.raises(ValueError):
            GradedMap.from_dense(A, B, [[1]])


class TestHomologyTable:
    def test_json_round_trip(self):
        H = HomologyTable({(0, 1): (1, ()), (3, 7): (0, (2,)), (2, 5): (2, (2, 4))})
        assert HomologyTable.from_json(H.to_json()) == H

    def test_divisibility_enforced(self):
        with pytest.raises(ValueError):
            HomologyTable({(0, 0): (0, (2, 3))})

    def test_euler_characteristic(self):
        H = HomologyTable({(0, 1): (1, ()), (1, 3): (2, ()), (3, 7): (0, (2,))})
        assert H.euler_characteristic() == LaurentPoly({1: 1, 3: -2})
